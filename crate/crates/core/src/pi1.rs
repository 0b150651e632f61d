//! Free-group machinery for tangle complements.
//!
//! The fundamental group of a solid-torus tangle complement is free on the
//! longitude `l` and the meridians of the arcs. Meridians picked up while
//! sliding along the longitude are tracked symbolically: a letter at
//! conjugation depth j stands for l^-j x l^j, which keeps words short and
//! mirrors the meridian-subgroup ladder instead of expanding conjugates
//! eagerly.

use crate::rational::Frac;
use crate::torus_diagram::{Label, TorusDiagram};
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum Pi1Error {
    #[error("unsupported half-twist exponent {0} (expected 1, 2, -2, 3)")]
    UnsupportedExponent(i64),
    #[error("cannot parse word token {0:?}")]
    BadToken(String),
}

/// Generator symbols: the longitude, the four local meridians of a
/// half-twist block, and numbered meridians.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Base {
    L,
    A,
    B,
    C,
    D,
    M(u32),
}

impl fmt::Display for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Base::L => write!(f, "l"),
            Base::A => write!(f, "a"),
            Base::B => write!(f, "b"),
            Base::C => write!(f, "c"),
            Base::D => write!(f, "d"),
            Base::M(k) => write!(f, "m{}", k),
        }
    }
}

/// One signed letter, with its l-conjugation depth (always 0 for `l` itself).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Letter {
    pub base: Base,
    pub depth: i64,
    pub sign: i8,
}

impl Letter {
    pub fn new(base: Base, sign: i8) -> Self {
        Letter {
            base,
            depth: 0,
            sign,
        }
    }

    pub fn inverse(&self) -> Letter {
        Letter {
            base: self.base,
            depth: self.depth,
            sign: -self.sign,
        }
    }

    fn cancels(&self, other: &Letter) -> bool {
        self.base == other.base && self.depth == other.depth && self.sign == -other.sign
    }
}

/// A freely reduced word over the alphabet.
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct GroupWord {
    letters: Vec<Letter>,
}

impl GroupWord {
    pub fn empty() -> Self {
        GroupWord::default()
    }

    /// Build from raw letters, freely reducing.
    pub fn from_letters(raw: impl IntoIterator<Item = Letter>) -> Self {
        let mut stack: Vec<Letter> = Vec::new();
        for l in raw {
            debug_assert!(l.sign == 1 || l.sign == -1);
            if matches!(stack.last(), Some(top) if top.cancels(&l)) {
                stack.pop();
            } else {
                stack.push(l);
            }
        }
        GroupWord { letters: stack }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &GroupWord) -> GroupWord {
        GroupWord::from_letters(self.letters.iter().chain(other.letters.iter()).copied())
    }

    pub fn inverse(&self) -> GroupWord {
        GroupWord {
            letters: self.letters.iter().rev().map(Letter::inverse).collect(),
        }
    }

    /// Total l-exponent; a homomorphism to the integers.
    pub fn l_exponent(&self) -> i64 {
        self.letters
            .iter()
            .filter(|l| l.base == Base::L)
            .map(|l| l.sign as i64)
            .sum()
    }

    /// Shift the conjugation depth of every non-longitude letter:
    /// conjugation of the whole word by l^j.
    pub fn shift_depth(&self, j: i64) -> GroupWord {
        GroupWord {
            letters: self
                .letters
                .iter()
                .map(|l| {
                    if l.base == Base::L {
                        *l
                    } else {
                        Letter {
                            depth: l.depth + j,
                            ..*l
                        }
                    }
                })
                .collect(),
        }
    }

    /// Expand every depth tag into explicit l-conjugation and reduce.
    pub fn expand_tags(&self) -> GroupWord {
        let mut raw = Vec::new();
        for l in &self.letters {
            if l.base == Base::L || l.depth == 0 {
                raw.push(Letter { depth: 0, ..*l });
                continue;
            }
            let j = l.depth;
            let (count, pre_sign) = (j.unsigned_abs() as usize, if j > 0 { -1i8 } else { 1 });
            for _ in 0..count {
                raw.push(Letter::new(Base::L, pre_sign));
            }
            raw.push(Letter { depth: 0, ..*l });
            for _ in 0..count {
                raw.push(Letter::new(Base::L, -pre_sign));
            }
        }
        GroupWord::from_letters(raw)
    }

    /// Parse the whitespace-separated surface syntax, e.g. "l m1 l^-1 m2".
    pub fn parse(s: &str) -> Result<GroupWord, Pi1Error> {
        let mut raw = Vec::new();
        for token in s.split_whitespace() {
            let (head, power) = match token.split_once('^') {
                None => (token, 1i64),
                Some((h, p)) => (
                    h,
                    p.parse::<i64>()
                        .map_err(|_| Pi1Error::BadToken(token.to_string()))?,
                ),
            };
            if power == 0 {
                return Err(Pi1Error::BadToken(token.to_string()));
            }
            let base = match head {
                "l" => Base::L,
                "a" => Base::A,
                "b" => Base::B,
                "c" => Base::C,
                "d" => Base::D,
                m if m.starts_with('m') && m.len() > 1 => {
                    let k: u32 = m[1..]
                        .parse()
                        .map_err(|_| Pi1Error::BadToken(token.to_string()))?;
                    Base::M(k)
                }
                _ => return Err(Pi1Error::BadToken(token.to_string())),
            };
            let sign = if power > 0 { 1 } else { -1 };
            for _ in 0..power.unsigned_abs() {
                raw.push(Letter::new(base, sign));
            }
        }
        Ok(GroupWord::from_letters(raw))
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let expanded = self.expand_tags();
        let mut first = true;
        for l in &expanded.letters {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            if l.sign > 0 {
                write!(f, "{}", l.base)?;
            } else {
                write!(f, "{}^-1", l.base)?;
            }
        }
        Ok(())
    }
}

fn word(spec: &[(Base, i8)]) -> GroupWord {
    GroupWord::from_letters(spec.iter().map(|&(b, s)| Letter::new(b, s)))
}

/// The two sector-3 contraction relations of the local half-twist model,
/// one pair per exponent.
pub fn half_twist_relations(k: i64) -> Result<(GroupWord, GroupWord), Pi1Error> {
    use Base::{A, B, C, D};
    let pair = match k {
        1 => (word(&[(A, 1), (D, 1)]), word(&[(C, 1), (B, 1)])),
        2 => (
            word(&[(A, -1), (D, 1), (A, 1), (B, 1)]),
            word(&[(C, 1), (B, -1), (A, 1), (B, 1)]),
        ),
        -2 => (
            word(&[(A, 1), (B, -1), (A, -1), (C, 1), (A, 1), (B, 1)]),
            word(&[(B, -1), (D, 1), (B, 1), (A, 1), (B, 1), (A, -1)]),
        ),
        3 => (
            word(&[(A, -1), (D, 1), (A, 1), (B, -1), (A, 1), (B, 1)]),
            word(&[(C, 1), (B, -1), (A, -1), (B, 1), (A, 1), (B, 1)]),
        ),
        other => return Err(Pi1Error::UnsupportedExponent(other)),
    };
    Ok(pair)
}

/// A set of relators together with closure under l-conjugation.
#[derive(Clone, Debug, Default)]
pub struct RelationSet {
    pub relators: Vec<GroupWord>,
    pub l_closed: bool,
}

impl RelationSet {
    pub fn from_half_twists(ks: &[i64]) -> Result<RelationSet, Pi1Error> {
        let mut relators = Vec::new();
        for &k in ks {
            let (r1, r2) = half_twist_relations(k)?;
            relators.push(r1);
            relators.push(r2);
        }
        Ok(RelationSet {
            relators,
            l_closed: true,
        })
    }
}

// ---------------------------------------------------------------------------
// Wirtinger meridians from torus diagrams
// ---------------------------------------------------------------------------

/// One meridian generator per arc of the sector's label.
pub fn wirtinger_meridians(d: &TorusDiagram, sector: u8) -> Vec<String> {
    let label = Label::from_index((sector.saturating_sub(1)) as usize);
    d.arcs
        .iter()
        .enumerate()
        .filter(|(_, a)| a.label == label)
        .map(|(i, _)| format!("m{}", i + 1))
        .collect()
}

/// Arc ids of the sector label meeting the region of label-height at most
/// `r`. The generator set can change only where an arc begins, i.e. at a
/// bridge point, which is the meridian-ladder lemma.
pub fn wirtinger_generators_at_level(d: &TorusDiagram, sector: u8, r: &Frac) -> Vec<usize> {
    let label = Label::from_index((sector.saturating_sub(1)) as usize);
    let height = |p: &(Frac, Frac)| match label {
        Label::A => p.1.clone(),
        Label::B => -&p.0,
        Label::C => &p.0 - &p.1,
    };
    d.arcs
        .iter()
        .enumerate()
        .filter(|(_, a)| a.label == label)
        .filter(|(_, a)| a.path.iter().map(&height).min().map(|m| m <= *r) == Some(true))
        .map(|(i, _)| i)
        .collect()
}

// ---------------------------------------------------------------------------
// Longitude-front factorization
// ---------------------------------------------------------------------------

/// Factor w = l^p gamma_0 with gamma_0 free of longitude letters, obtained
/// by repeatedly rewriting x l -> l (l^-1 x l) and absorbing the conjugates
/// as depth-tagged meridians.
pub fn factor_longitude_front(w: &GroupWord) -> (i64, GroupWord) {
    let p = w.l_exponent();
    let mut prefix = 0i64;
    let mut tail = Vec::new();
    for l in w.letters() {
        if l.base == Base::L {
            prefix += l.sign as i64;
            continue;
        }
        tail.push(Letter {
            depth: l.depth + p - prefix,
            ..*l
        });
    }
    (p, GroupWord::from_letters(tail))
}

/// One segment of a flat decomposition l^n mu_1 rho_1 ... mu_k rho_k.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FlatSegment {
    /// A flat (depth-0) meridian letter.
    Flat(Letter),
    /// A relator from the closure: index into the relation set, depth shift,
    /// and whether it is inverted.
    Relator {
        index: usize,
        depth: i64,
        inverted: bool,
    },
}

#[derive(Clone, Debug, Default)]
pub struct FlatDecomposition {
    pub l_power: i64,
    pub segments: Vec<FlatSegment>,
    /// Irreducible remainder when the greedy search fails.
    pub remainder: Option<GroupWord>,
}

impl FlatDecomposition {
    pub fn succeeded(&self) -> bool {
        self.remainder.is_none()
    }

    /// Reassemble the decomposition into a word (with tags), for checking.
    pub fn expand(&self, relations: &RelationSet) -> GroupWord {
        let mut out = GroupWord::from_letters(
            std::iter::repeat(Letter::new(Base::L, if self.l_power >= 0 { 1 } else { -1 }))
                .take(self.l_power.unsigned_abs() as usize),
        );
        for seg in &self.segments {
            let piece = match seg {
                FlatSegment::Flat(letter) => GroupWord::from_letters([*letter]),
                FlatSegment::Relator {
                    index,
                    depth,
                    inverted,
                } => {
                    let r = relations.relators[*index].shift_depth(*depth);
                    if *inverted {
                        r.inverse()
                    } else {
                        r
                    }
                }
            };
            out = out.concat(&piece);
        }
        if let Some(rem) = &self.remainder {
            out = out.concat(rem);
        }
        out
    }
}

const MAX_RELATOR_DEPTH: i64 = 3;

fn match_candidates(
    letters: &[Letter],
    pos: usize,
    relations: &RelationSet,
) -> Vec<(FlatSegment, usize)> {
    let mut cands = Vec::new();
    let depths: Vec<i64> = if relations.l_closed {
        (-MAX_RELATOR_DEPTH..=MAX_RELATOR_DEPTH).collect()
    } else {
        vec![0]
    };
    for (ri, r) in relations.relators.iter().enumerate() {
        for &j in &depths {
            for inverted in [false, true] {
                let shifted = if inverted {
                    r.inverse().shift_depth(j)
                } else {
                    r.shift_depth(j)
                };
                let rl = shifted.letters();
                if rl.is_empty() || pos + rl.len() > letters.len() {
                    continue;
                }
                if letters[pos..pos + rl.len()] == *rl {
                    cands.push((
                        FlatSegment::Relator {
                            index: ri,
                            depth: j,
                            inverted,
                        },
                        rl.len(),
                    ));
                }
            }
        }
    }
    // longest matches first
    cands.sort_by_key(|(_, len)| std::cmp::Reverse(*len));
    if letters[pos].depth == 0 && letters[pos].base != Base::L {
        cands.push((FlatSegment::Flat(letters[pos]), 1));
    }
    cands
}

fn search(
    letters: &[Letter],
    pos: usize,
    relations: &RelationSet,
    budget: &mut u32,
    out: &mut Vec<FlatSegment>,
) -> bool {
    if pos == letters.len() {
        return true;
    }
    let cands = match_candidates(letters, pos, relations);
    let mut tried = 0u32;
    for (seg, len) in cands {
        if tried > 0 {
            if *budget == 0 {
                break;
            }
            *budget -= 1;
        }
        tried += 1;
        out.push(seg);
        if search(letters, pos + len, relations, budget, out) {
            return true;
        }
        out.pop();
    }
    false
}

/// Greedy left-to-right decomposition of a word into l^n followed by
/// alternating flat meridians and closure relators, with backtracking
/// depth 2. Reports an honest irreducible remainder on failure rather than
/// claiming completeness.
pub fn flat_factorization(w: &GroupWord, relations: &RelationSet) -> FlatDecomposition {
    let (p, gamma0) = factor_longitude_front(w);
    let letters = gamma0.letters();
    let mut segments = Vec::new();
    let mut budget = 2u32;
    if search(letters, 0, relations, &mut budget, &mut segments) {
        return FlatDecomposition {
            l_power: p,
            segments,
            remainder: None,
        };
    }
    // fall back: consume greedily without backtracking until stuck
    segments.clear();
    let mut pos = 0usize;
    while pos < letters.len() {
        let cands = match_candidates(letters, pos, relations);
        match cands.into_iter().next() {
            Some((seg, len)) => {
                segments.push(seg);
                pos += len;
            }
            None => break,
        }
    }
    FlatDecomposition {
        l_power: p,
        segments,
        remainder: Some(GroupWord {
            letters: letters[pos..].to_vec(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::{Factor, Factorization};
    use crate::torus_diagram::build::build_from_factorization;

    #[test]
    fn reduce_is_canonical() {
        let w = GroupWord::parse("a b b^-1 a^-1 c").unwrap();
        assert_eq!(w, GroupWord::parse("c").unwrap());
        let ww = w.concat(&w.inverse());
        assert!(ww.is_empty());
    }

    #[test]
    fn parse_and_display() {
        let w = GroupWord::parse("l m1 l^-1 m2").unwrap();
        assert_eq!(w.len(), 4);
        assert_eq!(format!("{}", w), "l m1 l^-1 m2");
        assert!(GroupWord::parse("q").is_err());
        assert!(GroupWord::parse("a^0").is_err());
    }

    #[test]
    fn relation_table_rows() {
        let (r1, r2) = half_twist_relations(1).unwrap();
        assert_eq!(format!("{}", r1), "a d");
        assert_eq!(format!("{}", r2), "c b");
        let (r1, r2) = half_twist_relations(2).unwrap();
        assert_eq!(format!("{}", r1), "a^-1 d a b");
        assert_eq!(format!("{}", r2), "c b^-1 a b");
        let (r1, r2) = half_twist_relations(-2).unwrap();
        assert_eq!(format!("{}", r1), "a b^-1 a^-1 c a b");
        assert_eq!(format!("{}", r2), "b^-1 d b a b a^-1");
        let (r1, r2) = half_twist_relations(3).unwrap();
        assert_eq!(format!("{}", r1), "a^-1 d a b^-1 a b");
        assert_eq!(format!("{}", r2), "c b^-1 a^-1 b a b");
        assert_eq!(
            half_twist_relations(4),
            Err(Pi1Error::UnsupportedExponent(4))
        );
    }

    #[test]
    fn longitude_front_examples() {
        let (p, g) = factor_longitude_front(&GroupWord::parse("l").unwrap());
        assert_eq!(p, 1);
        assert!(g.is_empty());

        let (p, g) = factor_longitude_front(&GroupWord::parse("m1 l").unwrap());
        assert_eq!(p, 1);
        assert_eq!(g.letters().len(), 1);
        assert_eq!(g.letters()[0].depth, 1);

        let w = GroupWord::parse("l^2 m1 l^-1 m2").unwrap();
        let (p, g) = factor_longitude_front(&w);
        assert_eq!(p, 1);
        assert_eq!(g.letters().len(), 2);
        assert_eq!(g.letters()[0].depth, -1);
        assert_eq!(g.letters()[1].depth, 0);
        // expansion recovers the input
        let l_front = GroupWord::from_letters(
            std::iter::repeat(Letter::new(Base::L, 1)).take(p as usize),
        );
        assert_eq!(l_front.concat(&g.expand_tags()), w);
    }

    #[test]
    fn l_exponent_is_homomorphism() {
        let u = GroupWord::parse("l m1 l").unwrap();
        let v = GroupWord::parse("l^-1 m2 l^2 m3").unwrap();
        assert_eq!(u.concat(&v).l_exponent(), u.l_exponent() + v.l_exponent());
    }

    #[test]
    fn flat_factorization_examples() {
        let relations = RelationSet::from_half_twists(&[1]).unwrap();
        let d = flat_factorization(&GroupWord::parse("l^3").unwrap(), &relations);
        assert!(d.succeeded());
        assert_eq!(d.l_power, 3);
        assert!(d.segments.is_empty());

        let d = flat_factorization(&GroupWord::parse("l a d").unwrap(), &relations);
        assert!(d.succeeded());
        assert_eq!(d.l_power, 1);
        assert_eq!(d.segments.len(), 1);
        assert!(matches!(
            d.segments[0],
            FlatSegment::Relator {
                index: 0,
                depth: 0,
                inverted: false
            }
        ));
    }

    #[test]
    fn flat_factorization_reports_remainder() {
        let relations = RelationSet::from_half_twists(&[1]).unwrap();
        // an l-conjugated meridian with no matching relator is irreducible
        let w = GroupWord::parse("l m1 l^-1 m2").unwrap();
        let d = flat_factorization(&w, &relations);
        assert!(!d.succeeded());
        let rem = d.remainder.as_ref().unwrap();
        assert!(rem.letters().iter().any(|l| l.depth != 0));
        // reassembly still reproduces the input
        assert_eq!(d.expand(&relations).expand_tags(), w.expand_tags());
    }

    #[test]
    fn flat_recomposition_roundtrip() {
        let relations = RelationSet::from_half_twists(&[1, 2]).unwrap();
        // l^2 (ad conjugated once) m1 (cb^-1ab)
        let built = GroupWord::parse("l^2 l^-1 a d l m1 c b^-1 a b").unwrap();
        let d = flat_factorization(&built, &relations);
        assert!(d.succeeded(), "{:?}", d);
        let back = d.expand(&relations).expand_tags();
        assert_eq!(back, built.expand_tags());
    }

    #[test]
    fn relator_closure_under_conjugation() {
        let relations = RelationSet::from_half_twists(&[3]).unwrap();
        for r in &relations.relators {
            for j in -3i64..=3 {
                let shifted = r.shift_depth(j).expand_tags();
                let lj = GroupWord::from_letters(
                    std::iter::repeat(Letter::new(Base::L, if j >= 0 { -1 } else { 1 }))
                        .take(j.unsigned_abs() as usize),
                );
                let direct = lj.concat(r).concat(&lj.inverse());
                assert_eq!(shifted, direct.expand_tags());
            }
        }
    }

    #[test]
    fn wirtinger_counts_from_templates() {
        assert!(wirtinger_meridians(&TorusDiagram::empty(), 1).is_empty());
        let f = Factorization {
            strands: 2,
            degree: 2,
            factors: vec![
                Factor {
                    conjugator: vec![],
                    exponent: 1,
                },
                Factor {
                    conjugator: vec![],
                    exponent: 1,
                },
            ],
        };
        let d = build_from_factorization(&f).unwrap();
        // two arcs of each label per block
        assert_eq!(wirtinger_meridians(&d, 1).len(), 4);
        assert_eq!(wirtinger_meridians(&d, 2).len(), 4);
    }

    #[test]
    fn ladder_generators_constant_between_bridge_points() {
        let f = Factorization {
            strands: 2,
            degree: 2,
            factors: vec![Factor {
                conjugator: vec![],
                exponent: 2,
            }],
        };
        let d = build_from_factorization(&f).unwrap();
        let mut ys: Vec<Frac> = d.bridge_points.iter().map(|b| b.y.clone()).collect();
        ys.sort();
        // two levels strictly between consecutive bridge heights
        let between1 = &(&ys[1] + &ys[2]) / &Frac::int(2);
        let between2 = &(&between1 + &ys[2]) / &Frac::int(2);
        assert_eq!(
            wirtinger_generators_at_level(&d, 1, &between1),
            wirtinger_generators_at_level(&d, 1, &between2)
        );
        let above = &(&ys[3] + &Frac::one()) / &Frac::int(2);
        assert!(
            wirtinger_generators_at_level(&d, 1, &above).len()
                >= wirtinger_generators_at_level(&d, 1, &between1).len()
        );
    }
}
