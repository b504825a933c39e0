//! Pointwise identity checks.

use std::fmt;

use num_bigint::BigInt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityPoint {
    pub label: String,
    pub lhs: BigInt,
    pub rhs: BigInt,
}

impl IdentityPoint {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// Both sides of an identity at every checked parameter point.
///
/// `pass` is true iff every point has `lhs == rhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityReport {
    pub name: String,
    pub range: String,
    pub points: Vec<IdentityPoint>,
    pub pass: bool,
}

impl IdentityReport {
    pub fn new(name: impl Into<String>, range: impl Into<String>) -> Self {
        IdentityReport { name: name.into(), range: range.into(), points: Vec::new(), pass: true }
    }

    pub fn check(&mut self, label: impl Into<String>, lhs: BigInt, rhs: BigInt) {
        let point = IdentityPoint { label: label.into(), lhs, rhs };
        self.pass &= point.holds();
        self.points.push(point);
    }

    pub fn failures(&self) -> impl Iterator<Item = &IdentityPoint> {
        self.points.iter().filter(|p| !p.holds())
    }

    /// Appends the points of `other`, keeping this report's name.
    pub fn absorb(&mut self, other: IdentityReport) {
        self.pass &= other.pass;
        self.points.extend(other.points);
    }
}

impl fmt::Display for IdentityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.pass { "PASS" } else { "FAIL" };
        write!(f, "{verdict} {} [{}]: {} points", self.name, self.range, self.points.len())?;
        for p in self.failures() {
            write!(f, "\n  {}: lhs={} rhs={}", p.label, p.lhs, p.rhs)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pass_tracks_every_point() {
        let mut r = IdentityReport::new("demo", "n<=2");
        r.check("a", 1.into(), 1.into());
        assert!(r.pass);
        r.check("b", 1.into(), 2.into());
        assert!(!r.pass);
        assert_eq!(r.failures().count(), 1);
        assert!(r.to_string().contains("b: lhs=1 rhs=2"));
        let mut empty = IdentityReport::new("empty", "");
        assert!(empty.pass);
        empty.absorb(r);
        assert!(!empty.pass);
        assert_eq!(empty.points.len(), 2);
    }
}
