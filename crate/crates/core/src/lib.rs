//! Verified enclosures of all real roots of a univariate function.
//!
//! The crate is organised bottom-up:
//!
//! * [`interval`], [`round`], [`float`]: outward-rounded binary64 intervals.
//! * [`expr`]: expression trees with natural, point, derivative and slope
//!   extensions.
//! * [`contract`]: one interval Newton contraction with certified endpoint
//!   signs.
//! * [`point_newton`]: the floating point modified Newton iteration.
//! * [`monotone`]: the verified solver for functions with a derivative
//!   bounded away from zero.
//! * [`solver`]: the branch-and-bound driver tying everything together.
//! * [`polyfam`]: the polynomial stress family used to test the driver.
//! * [`report`]: serialisable output records for the command line tool.

pub mod candidate;
pub mod contract;
pub mod expand;
pub mod expr;
pub mod float;
pub mod interval;
pub mod monotone;
pub mod point_newton;
pub mod polyfam;
pub mod problem;
pub mod report;
pub mod round;
pub mod solver;

pub use candidate::{RootCandidate, Status};
pub use expr::{parse, Expr, SlopePair, SyntaxError};
pub use interval::{Interval, IntervalError, Sign};
pub use problem::Problem;
