//! Root enclosures returned by the solvers.

use serde::{Deserialize, Serialize};

use crate::interval::{Interval, Sign};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    /// The signs of `f` at the two endpoints are known and opposite, so the
    /// interval contains a root.
    Certified,
    /// The interval may contain a root; nothing more is known.
    Possible,
    /// `f` could not be separated from zero on the whole interval.
    Cluster,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Certified => "certified",
            Status::Possible => "possible",
            Status::Cluster => "cluster",
        }
    }
}

/// An interval that may contain roots, with the known signs of `f` at its
/// endpoints (`Sign::Zero` when unknown).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootCandidate {
    pub interval: Interval,
    pub lo_sign: Sign,
    pub hi_sign: Sign,
    pub status: Status,
}

impl RootCandidate {
    /// Certified when the signs are opposite, otherwise `Cluster` or
    /// `Possible` depending on where the interval came from.
    pub fn new(interval: Interval, lo_sign: Sign, hi_sign: Sign, cluster: bool) -> RootCandidate {
        let status = if lo_sign.opposite(hi_sign) {
            Status::Certified
        } else if cluster {
            Status::Cluster
        } else {
            Status::Possible
        };
        RootCandidate {
            interval,
            lo_sign,
            hi_sign,
            status,
        }
    }

    pub fn is_certified(&self) -> bool {
        self.status == Status::Certified
    }

    /// The candidate seen through `t -> t`, `f -> -f`.
    pub fn negated(self) -> RootCandidate {
        RootCandidate {
            lo_sign: -self.lo_sign,
            hi_sign: -self.hi_sign,
            ..self
        }
    }
}
