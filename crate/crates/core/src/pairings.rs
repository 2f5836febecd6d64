//! Side-pairing tables for copies of a polygon and the gluing that turns them
//! into a surface complex.
//!
//! Sides are labelled `1..=m` clockwise; side `i` runs from corner `i` to
//! corner `i+1`. A pairing either matches the start of one side with the start
//! of its partner ([`SideMatch::Same`], as when adjacent copies of a coloured
//! polygon are reflected into each other) or with its end
//! ([`SideMatch::Opposite`], as for translations between sides of one copy).

use serde::{Deserialize, Serialize};

use crate::colouring::Family;
use crate::complex::CellComplex;
use crate::error::{invalid, Result};
use crate::gf2::BitVector;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SideMatch {
    Same,
    Opposite,
}

/// A side `i` (1-based) of copy `c` (index into `copies`).
pub type Side = (usize, usize);

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct PairingTable {
    pub m: usize,
    pub copies: Vec<BitVector>,
    pub pairs: Vec<[Side; 2]>,
    pub matching: SideMatch,
}

impl PairingTable {
    /// The partner of every side, indexed `copy * m + (side - 1)`, after
    /// checking that the pairs form a fixed-point-free involution on all sides.
    pub fn partners(&self) -> Result<Vec<usize>> {
        if self.m < 1 || self.copies.is_empty() {
            return Err(invalid("a table needs at least one side and one copy"));
        }
        let slots = self.m * self.copies.len();
        let mut partner = vec![usize::MAX; slots];
        let slot = |(i, c): Side| -> Result<usize> {
            if i == 0 || i > self.m || c >= self.copies.len() {
                return Err(invalid(format!("side ({i}, copy {c}) is out of range")));
            }
            Ok(c * self.m + i - 1)
        };
        for &[a, b] in &self.pairs {
            let (x, y) = (slot(a)?, slot(b)?);
            if x == y {
                return Err(invalid(format!("side {a:?} is paired with itself")));
            }
            if partner[x] != usize::MAX || partner[y] != usize::MAX {
                return Err(invalid("a side appears in two pairs"));
            }
            partner[x] = y;
            partner[y] = x;
        }
        if let Some(free) = partner.iter().position(|&p| p == usize::MAX) {
            return Err(invalid(format!("side {} of copy {} is unpaired", free % self.m + 1, free / self.m)));
        }
        Ok(partner)
    }

    /// Builds a table from a rule `side ↦ partner`, checking it is an involution.
    pub fn from_rule(m: usize, copies: Vec<BitVector>, matching: SideMatch, rule: impl Fn(Side) -> Side) -> Result<Self> {
        let mut pairs = Vec::new();
        for c in 0..copies.len() {
            for i in 1..=m {
                let p = rule((i, c));
                if rule(p) != (i, c) {
                    return Err(invalid(format!("pairing rule is not an involution at side ({i}, copy {c})")));
                }
                if (c, i) < (p.1, p.0) {
                    pairs.push([(i, c), p]);
                }
            }
        }
        Ok(Self { m, copies, pairs, matching })
    }
}

/// Side labels are read modulo `m` in `1..=m`.
fn wrap(i: usize, m: usize) -> usize {
    (i - 1) % m + 1
}

/// The side pairings for the three surface families.
pub fn theorem_e_table(family: Family, g: usize) -> Result<PairingTable> {
    family.check_genus(g)?;
    let m = family.polygon_sides(g);
    let z2 = |k: usize| -> Vec<BitVector> { BitVector::all(k).collect() };
    let flip = |c: usize, bit: usize| c ^ (1 << bit);
    match family {
        Family::Am => PairingTable::from_rule(m, z2(2), SideMatch::Same, |(i, c)| {
            if i % 2 == 1 {
                (i, flip(c, 0))
            } else {
                (i, flip(c, 1))
            }
        }),
        Family::Wiman => PairingTable::from_rule(m, z2(1), SideMatch::Same, |(i, c)| {
            if i % 2 == 1 {
                (i, flip(c, 0))
            } else if c == 0 {
                (wrap(2 * g + i, m), 1)
            } else {
                // inverse of the rule above
                (wrap(i + m - 2 * g, m), 0)
            }
        }),
        Family::Kulkarni => PairingTable::from_rule(m, z2(2), SideMatch::Same, |(i, c)| match i % 4 {
            1 => (i, flip(c, 0)),
            2 => (i, flip(c, 1)),
            3 => (wrap(g + 1 + i, m), flip(c, 0)),
            _ => (wrap(g + 1 + i, m), flip(c, 1)),
        }),
        _ => Err(invalid(format!("no side-pairing table for family {family}"))),
    }
}

/// Glues the copies into a surface. Flags are `(copy, side, end)` stored at
/// `2 (copy · m + side) + end`.
pub fn glue(table: &PairingTable) -> Result<CellComplex> {
    let partner = table.partners()?;
    let m = table.m;
    let mut adj = vec![0u32; partner.len() * 2 * 3];
    for (s, &p) in partner.iter().enumerate() {
        let (c, i) = (s / m, s % m);
        for e in 0..2 {
            let f = 2 * s + e;
            adj[f * 3] = (2 * s + 1 - e) as u32;
            adj[f * 3 + 1] = if e == 0 {
                (2 * (c * m + (i + m - 1) % m) + 1) as u32
            } else {
                (2 * (c * m + (i + 1) % m)) as u32
            };
            let pe = match table.matching {
                SideMatch::Same => e,
                SideMatch::Opposite => 1 - e,
            };
            adj[f * 3 + 2] = (2 * p + pe) as u32;
        }
    }
    CellComplex::from_flags(2, adj)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn partner_of(t: &PairingTable, side: Side) -> Side {
        let p = t.partners().unwrap()[side.1 * t.m + side.0 - 1];
        (p % t.m + 1, p / t.m)
    }

    #[test]
    fn am_rule_examples() {
        let t = theorem_e_table(Family::Am, 2).unwrap();
        assert_eq!(t.m, 6);
        assert_eq!(t.copies.len(), 4);
        // copy index = bits of v, e₁ is bit 0
        assert_eq!(partner_of(&t, (1, 0)), (1, 1));
        assert_eq!(partner_of(&t, (2, 0)), (2, 2));
        assert_eq!(t.pairs.len(), 12);
    }

    #[test]
    fn wiman_and_kulkarni_rules() {
        let w = theorem_e_table(Family::Wiman, 2).unwrap();
        assert_eq!(partner_of(&w, (2, 0)), (6, 1));
        assert_eq!(partner_of(&w, (1, 0)), (1, 1));
        let k = theorem_e_table(Family::Kulkarni, 3).unwrap();
        assert_eq!(partner_of(&k, (3, 2)), (7, 3));
        assert_eq!(partner_of(&k, (4, 0)), (8, 2));
        assert!(theorem_e_table(Family::Kulkarni, 4).is_err());
        assert!(theorem_e_table(Family::LoebellAm, 3).is_err());
    }

    #[test]
    fn glued_family_genus() {
        for g in 2..7 {
            for fam in [Family::Am, Family::Wiman] {
                let c = glue(&theorem_e_table(fam, g).unwrap()).unwrap();
                assert!(c.is_closed_pseudomanifold());
                assert_eq!(c.analyze().genus, Some(g as i64), "{fam} {g}");
            }
        }
        let k = glue(&theorem_e_table(Family::Kulkarni, 7).unwrap()).unwrap();
        assert_eq!(k.analyze().genus, Some(7));
    }

    #[test]
    fn square_torus() {
        let t = PairingTable {
            m: 4,
            copies: vec![BitVector::zero(1)],
            pairs: vec![[(1, 0), (3, 0)], [(2, 0), (4, 0)]],
            matching: SideMatch::Opposite,
        };
        let c = glue(&t).unwrap();
        assert_eq!(c.euler(), 0);
        assert_eq!(c.analyze().genus, Some(1));
        // the same sides glued the other way give a Klein bottle
        let k = glue(&PairingTable { matching: SideMatch::Same, ..t.clone() }).unwrap();
        assert!(!k.analyze().orientable);
    }

    #[test]
    fn bad_tables() {
        let base = PairingTable { m: 4, copies: vec![BitVector::zero(1)], pairs: vec![], matching: SideMatch::Same };
        assert!(glue(&base).is_err());
        let selfpair = PairingTable { pairs: vec![[(1, 0), (1, 0)], [(2, 0), (4, 0)]], ..base.clone() };
        assert!(glue(&selfpair).is_err());
        let twice = PairingTable { pairs: vec![[(1, 0), (3, 0)], [(1, 0), (4, 0)]], ..base.clone() };
        assert!(glue(&twice).is_err());
        let range = PairingTable { pairs: vec![[(1, 0), (5, 0)], [(2, 0), (4, 0)]], ..base };
        assert!(glue(&range).is_err());
        assert!(PairingTable::from_rule(4, vec![BitVector::zero(1)], SideMatch::Same, |(i, c)| (i % 4 + 1, c)).is_err());
    }

    #[test]
    fn json_round_trip() {
        let t = theorem_e_table(Family::Am, 2).unwrap();
        let s = serde_json::to_string(&t).unwrap();
        assert!(s.starts_with("{\"m\":6,\"copies\":[[0,0],[1,0],[0,1],[1,1]]"));
        let back: PairingTable = serde_json::from_str(&s).unwrap();
        assert_eq!(back, t);
    }
}
