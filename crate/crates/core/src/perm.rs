//! Permutations of `{1, ..., n}` stored as image tables.
//!
//! Composition is applied left to right everywhere in this crate:
//! `(a * b)` means "apply `a`, then `b`", so `(a * b)(i) = b(a(i))`.
//! Cycle notation in the opposite convention produces different products,
//! so the convention is fixed here once and never varies per call site.

use crate::error::GroupError;
use std::fmt;

/// Largest supported degree. Keeps image tables in `u16` and every scan at
/// desk scale.
pub const MAX_DEGREE: usize = 4096;

/// A bijection on the points `1..=degree`, stored 0-indexed.
///
/// Equality and ordering are lexicographic on the image table; the ordering
/// is what makes element enumeration canonical.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Box<[u16]>,
}

impl Permutation {
    /// The identity on `degree` points.
    ///
    /// Panics if `degree` is outside `1..=MAX_DEGREE`; degrees from external
    /// input must be validated before this is called.
    pub fn identity(degree: usize) -> Self {
        assert!(
            (1..=MAX_DEGREE).contains(&degree),
            "degree {degree} out of range"
        );
        Permutation {
            images: (0..degree as u16).collect(),
        }
    }

    /// Builds a permutation from a 0-indexed image table, validating that it
    /// is a bijection.
    pub fn from_images(images: Vec<u16>) -> Result<Self, GroupError> {
        let degree = images.len();
        if !(1..=MAX_DEGREE).contains(&degree) {
            return Err(GroupError::DegreeOutOfRange(degree));
        }
        let mut seen = vec![false; degree];
        for &img in &images {
            if (img as usize) >= degree {
                return Err(GroupError::PointOutOfRange {
                    point: img as usize + 1,
                    degree,
                });
            }
            if seen[img as usize] {
                return Err(GroupError::RepeatedPoint {
                    point: img as usize + 1,
                });
            }
            seen[img as usize] = true;
        }
        Ok(Permutation {
            images: images.into_boxed_slice(),
        })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the 0-indexed point `p`.
    #[inline]
    pub fn image(&self, p: u16) -> u16 {
        self.images[p as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &img)| i == img as usize)
    }

    /// Left-to-right composition: apply `self`, then `other`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation, GroupError> {
        if self.degree() != other.degree() {
            return Err(GroupError::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(self.mul(other))
    }

    /// Unchecked left-to-right composition for internal use.
    #[inline]
    pub(crate) fn mul(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self
                .images
                .iter()
                .map(|&i| other.images[i as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u16; self.degree()];
        for (i, &img) in self.images.iter().enumerate() {
            inv[img as usize] = i as u16;
        }
        Permutation {
            images: inv.into_boxed_slice(),
        }
    }

    /// Conjugate `self^g = g⁻¹ · self · g` (apply `g⁻¹`, then `self`, then `g`).
    pub fn conjugated_by(&self, g: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), g.degree());
        // (g⁻¹ s g)(x) = g(s(g⁻¹(x))); build directly to skip two allocations.
        let mut out = vec![0u16; self.degree()];
        for x in 0..self.degree() {
            out[g.images[x] as usize] = g.images[self.images[x] as usize];
        }
        Permutation {
            images: out.into_boxed_slice(),
        }
    }

    /// `self^k` by repeated squaring.
    pub fn pow(&self, mut k: u128) -> Permutation {
        let mut base = self.clone();
        let mut acc = Permutation::identity(self.degree());
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Multiplicative order: least common multiple of the cycle lengths.
    pub fn order(&self) -> u128 {
        let mut order: u128 = 1;
        for cycle in self.cycles() {
            let len = cycle.len() as u128;
            let g = gcd(order, len);
            order = order
                .checked_mul(len / g)
                .expect("element order exceeds u128");
        }
        order
    }

    /// Smallest point (0-indexed) moved by this permutation, if any.
    pub fn smallest_moved(&self) -> Option<u16> {
        self.images
            .iter()
            .enumerate()
            .find(|(i, &img)| *i != img as usize)
            .map(|(i, _)| i as u16)
    }

    /// Nontrivial cycles as 0-indexed point lists, each starting at its
    /// smallest point, ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<u16>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                cycle.push(p as u16);
                p = self.images[p] as usize;
            }
            out.push(cycle);
        }
        out
    }

    /// Parses whitespace-tolerant cycle notation over 1-indexed points.
    ///
    /// Grammar: `perm := "()" | cycle+`, `cycle := "(" int (ws int)* ")"`.
    /// `"()"` denotes the identity and cannot be mixed with nonempty cycles.
    pub fn parse(text: &str, degree: usize) -> Result<Permutation, GroupError> {
        if !(1..=MAX_DEGREE).contains(&degree) {
            return Err(GroupError::DegreeOutOfRange(degree));
        }
        let bytes = text.as_bytes();
        let mut pos = 0usize;
        let malformed = |pos: usize, msg: &str| GroupError::MalformedCycle {
            pos,
            msg: msg.to_string(),
        };
        let skip_ws = |pos: &mut usize| {
            while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
                *pos += 1;
            }
        };

        let mut cycles: Vec<Vec<u16>> = Vec::new();
        let mut saw_empty = false;
        skip_ws(&mut pos);
        if pos == bytes.len() {
            return Err(malformed(pos, "empty input"));
        }
        while pos < bytes.len() {
            if bytes[pos] != b'(' {
                return Err(malformed(pos, "expected '('"));
            }
            let open = pos;
            pos += 1;
            skip_ws(&mut pos);
            let mut cycle: Vec<u16> = Vec::new();
            loop {
                if pos >= bytes.len() {
                    return Err(malformed(open, "unclosed cycle"));
                }
                if bytes[pos] == b')' {
                    pos += 1;
                    break;
                }
                if !bytes[pos].is_ascii_digit() {
                    return Err(malformed(pos, "expected point or ')'"));
                }
                let start = pos;
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                let point: usize = text[start..pos]
                    .parse()
                    .map_err(|_| malformed(start, "point does not fit in an integer"))?;
                if point == 0 || point > degree {
                    return Err(GroupError::PointOutOfRange { point, degree });
                }
                cycle.push((point - 1) as u16);
                skip_ws(&mut pos);
            }
            if cycle.is_empty() {
                saw_empty = true;
            } else {
                cycles.push(cycle);
            }
            skip_ws(&mut pos);
        }
        if saw_empty && !cycles.is_empty() {
            return Err(malformed(0, "\"()\" cannot be mixed with nonempty cycles"));
        }

        let mut images: Vec<u16> = (0..degree as u16).collect();
        let mut used = vec![false; degree];
        for cycle in &cycles {
            for &p in cycle {
                if used[p as usize] {
                    return Err(GroupError::RepeatedPoint {
                        point: p as usize + 1,
                    });
                }
                used[p as usize] = true;
            }
            for i in 0..cycle.len() {
                let from = cycle[i] as usize;
                images[from] = cycle[(i + 1) % cycle.len()];
            }
        }
        Ok(Permutation {
            images: images.into_boxed_slice(),
        })
    }
}

fn gcd(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl fmt::Display for Permutation {
    /// Disjoint cycle notation over 1-indexed points; `()` for the identity.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for cycle in cycles {
            write!(f, "(")?;
            for (i, p) in cycle.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", p + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str, degree: usize) -> Permutation {
        Permutation::parse(text, degree).unwrap()
    }

    #[test]
    fn parse_identity() {
        let id = p("()", 5);
        assert!(id.is_identity());
        assert_eq!(id.degree(), 5);
    }

    #[test]
    fn parse_two_cycles() {
        // (1 2)(3 4 5) on 5 points: 1↦2, 2↦1, 3↦4, 4↦5, 5↦3.
        let g = p("(1 2)(3 4 5)", 5);
        let expected = Permutation::from_images(vec![1, 0, 3, 4, 2]).unwrap();
        assert_eq!(g, expected);
    }

    #[test]
    fn parse_rejects_repeated_point() {
        assert!(matches!(
            Permutation::parse("(1 1 2)", 3),
            Err(GroupError::RepeatedPoint { point: 1 })
        ));
        // Repetition across separate cycles is also rejected.
        assert!(matches!(
            Permutation::parse("(1 2)(2 3)", 3),
            Err(GroupError::RepeatedPoint { point: 2 })
        ));
    }

    #[test]
    fn parse_rejects_out_of_range_and_zero() {
        assert!(matches!(
            Permutation::parse("(1 4)", 3),
            Err(GroupError::PointOutOfRange { point: 4, degree: 3 })
        ));
        assert!(matches!(
            Permutation::parse("(0 1)", 3),
            Err(GroupError::PointOutOfRange { point: 0, .. })
        ));
    }

    #[test]
    fn parse_rejects_malformed() {
        assert!(matches!(
            Permutation::parse("", 3),
            Err(GroupError::MalformedCycle { .. })
        ));
        assert!(matches!(
            Permutation::parse("(1 2", 3),
            Err(GroupError::MalformedCycle { .. })
        ));
        assert!(matches!(
            Permutation::parse("(1 2) junk", 3),
            Err(GroupError::MalformedCycle { .. })
        ));
        // "()" mixed with a real cycle is not in the grammar.
        assert!(matches!(
            Permutation::parse("(1 2)()", 3),
            Err(GroupError::MalformedCycle { .. })
        ));
    }

    #[test]
    fn parse_is_whitespace_tolerant() {
        let a = p(" ( 1 2 )\t(3  4 5) ", 5);
        let b = p("(1 2)(3 4 5)", 5);
        assert_eq!(a, b);
    }

    #[test]
    fn compose_is_left_to_right() {
        // Apply (1 2 3) first, then (1 2): 1↦2↦1, 2↦3↦3, 3↦1↦2, i.e. (2 3).
        let a = p("(1 2 3)", 3);
        let b = p("(1 2)", 3);
        assert_eq!(a.compose(&b).unwrap(), p("(2 3)", 3));
        // Swapped operands: apply (1 2) first, then (1 2 3): 1↦2↦3, 2↦1↦2, 3↦3↦1.
        assert_eq!(b.compose(&a).unwrap(), p("(1 3)", 3));
    }

    #[test]
    fn compose_degree_mismatch() {
        let a = p("(1 2)", 2);
        let b = p("(1 2)", 3);
        assert!(matches!(
            a.compose(&b),
            Err(GroupError::DegreeMismatch(2, 3))
        ));
    }

    #[test]
    fn inverse_and_identity_laws() {
        let g = p("(1 2 3)(4 5)", 6);
        assert!(g.compose(&g.inverse()).unwrap().is_identity());
        assert!(g.inverse().compose(&g).unwrap().is_identity());
        let id = Permutation::identity(6);
        assert_eq!(g.compose(&id).unwrap(), g);
        assert_eq!(id.compose(&g).unwrap(), g);
    }

    #[test]
    fn orders() {
        assert_eq!(Permutation::identity(4).order(), 1);
        assert_eq!(p("(1 2)(3 4 5)", 5).order(), 6);
        assert_eq!(p("(1 2 3 4 5 6 7)", 7).order(), 7);
    }

    #[test]
    fn pow_matches_iterated_product() {
        let g = p("(1 2 3 4 5)(6 7)", 7);
        let mut acc = Permutation::identity(7);
        for k in 0..12u128 {
            assert_eq!(g.pow(k), acc, "power {k}");
            acc = acc.mul(&g);
        }
    }

    #[test]
    fn conjugation_relabels_cycles() {
        // (1 2)^(1 2 3) relabels the points of the transposition: (2 3).
        let s = p("(1 2)", 3);
        let g = p("(1 2 3)", 3);
        assert_eq!(s.conjugated_by(&g), p("(2 3)", 3));
        // h^g = g⁻¹ · h · g as a product.
        let via_product = g.inverse().mul(&s).mul(&g);
        assert_eq!(s.conjugated_by(&g), via_product);
    }

    #[test]
    fn display_round_trips() {
        for text in ["()", "(1 2)", "(1 2)(3 4 5)", "(2 4)(3 6 5)"] {
            let g = p(text, 6);
            assert_eq!(Permutation::parse(&g.to_string(), 6).unwrap(), g);
        }
        assert_eq!(p("(3 4 5)(1 2)", 6).to_string(), "(1 2)(3 4 5)");
    }
}
