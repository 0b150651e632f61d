//! Artin braid groups: words, the word problem, and full-twist factorizations.
//!
//! Equality of braid words is decided through the left-greedy Garside normal
//! form with permutation-braid atoms. Generator indexing is 1-based and σ_i
//! is the positive (right-handed) crossing of strands i, i+1, so the
//! right-handed trefoil closes σ1³.

use crate::perm::Permutation;
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum BraidError {
    #[error("strand count mismatch: {0} vs {1}")]
    StrandMismatch(usize, usize),
    #[error("generator index {0} out of range for {1} strands")]
    IndexOutOfRange(i64, usize),
    #[error("braid group needs at least one strand")]
    NoStrands,
    #[error("half twist needs at least 2 strands, got {0}")]
    DegreeTooSmall(usize),
    #[error("factorization exponent {0} not in {{-2, 1, 2, 3}}")]
    BadExponent(i64),
    #[error("factorization degree {0} exceeds strand count {1}")]
    DegreeExceedsStrands(usize, usize),
}

/// A word in the Artin generators of B_n. Letter `+i` is σ_i, `-i` is σ_i⁻¹.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i64>,
}

impl BraidWord {
    pub fn identity(strands: usize) -> Result<Self, BraidError> {
        if strands == 0 {
            return Err(BraidError::NoStrands);
        }
        Ok(BraidWord {
            strands,
            letters: Vec::new(),
        })
    }

    pub fn new(strands: usize, letters: Vec<i64>) -> Result<Self, BraidError> {
        if strands == 0 {
            return Err(BraidError::NoStrands);
        }
        for &l in &letters {
            let idx = l.unsigned_abs() as usize;
            if l == 0 || idx >= strands {
                return Err(BraidError::IndexOutOfRange(l, strands));
            }
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i64] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Sum of letter signs; the image under abelianization B_n -> Z.
    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|&l| l.signum()).sum()
    }

    pub fn compose(&self, other: &BraidWord) -> Result<BraidWord, BraidError> {
        if self.strands != other.strands {
            return Err(BraidError::StrandMismatch(self.strands, other.strands));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord {
            strands: self.strands,
            letters,
        })
    }

    pub fn invert(&self) -> BraidWord {
        BraidWord {
            strands: self.strands,
            letters: self.letters.iter().rev().map(|&l| -l).collect(),
        }
    }

    /// Image under B_n -> S_n sending σ_i to the transposition (i, i+1).
    pub fn permutation_image(&self) -> Permutation {
        let mut p = Permutation::identity(self.strands);
        for &l in &self.letters {
            let i = l.unsigned_abs() as usize;
            let s = Permutation::transposition(self.strands, i - 1, i);
            p = p.then(&s).expect("same degree");
        }
        p
    }

    /// Decide equality in B_n via Garside normal form.
    pub fn words_equal(&self, other: &BraidWord) -> Result<bool, BraidError> {
        if self.strands != other.strands {
            return Err(BraidError::StrandMismatch(self.strands, other.strands));
        }
        Ok(normal_form(self) == normal_form(other))
    }
}

impl fmt::Debug for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B{}[", self.strands)?;
        for (k, &l) in self.letters.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", l)?;
        }
        write!(f, "]")
    }
}

/// Standard positive half twist Δ_d = (σ1..σ_{d-1})(σ1..σ_{d-2})..(σ1),
/// of length d(d-1)/2, as a word in B_d.
pub fn half_twist(d: usize) -> Result<BraidWord, BraidError> {
    if d < 2 {
        return Err(BraidError::DegreeTooSmall(d));
    }
    let mut letters = Vec::with_capacity(d * (d - 1) / 2);
    for row in (1..d).rev() {
        for i in 1..=row {
            letters.push(i as i64);
        }
    }
    BraidWord::new(d, letters)
}

/// Full twist Δ²_d, the generator of the center of B_d.
pub fn full_twist(d: usize) -> Result<BraidWord, BraidError> {
    let h = half_twist(d)?;
    h.compose(&h)
}

/// One conjugated power of σ1: the factor g σ1^k g⁻¹ of a branch-locus
/// factorization. Exponents are restricted to the values realized by
/// tangencies (1), nodes (±2) and cusps (3).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Factor {
    /// Conjugator word, as signed generator indices.
    pub conjugator: Vec<i64>,
    pub exponent: i64,
}

/// A factorization of the full twist Δ²_d into conjugated powers of σ1.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Factorization {
    pub strands: usize,
    pub degree: usize,
    pub factors: Vec<Factor>,
}

impl Factorization {
    pub fn validate(&self) -> Result<(), BraidError> {
        if self.strands == 0 {
            return Err(BraidError::NoStrands);
        }
        if self.degree > self.strands {
            return Err(BraidError::DegreeExceedsStrands(self.degree, self.strands));
        }
        for f in &self.factors {
            if !matches!(f.exponent, -2 | 1 | 2 | 3) {
                return Err(BraidError::BadExponent(f.exponent));
            }
            BraidWord::new(self.strands, f.conjugator.clone())?;
        }
        Ok(())
    }

    pub fn exponent_sum(&self) -> i64 {
        self.factors.iter().map(|f| f.exponent).sum()
    }

    /// Concatenation of g_j σ1^{i_j} g_j⁻¹ in order.
    pub fn expand(&self) -> Result<BraidWord, BraidError> {
        self.validate()?;
        let mut word = BraidWord::identity(self.strands)?;
        for f in &self.factors {
            let g = BraidWord::new(self.strands, f.conjugator.clone())?;
            let power = BraidWord::new(
                self.strands,
                std::iter::repeat(if f.exponent > 0 { 1 } else { -1 })
                    .take(f.exponent.unsigned_abs() as usize)
                    .collect(),
            )?;
            word = word.compose(&g)?.compose(&power)?.compose(&g.invert())?;
        }
        Ok(word)
    }
}

/// Outcome of the three-stage factorization check. The exponent-sum test is
/// the cheap abelianization necessary condition and runs first; the normal
/// form comparison against Δ²_d is the full decision.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerificationReport {
    pub exponent_sum: i64,
    pub expected_exponent_sum: i64,
    pub exponent_sum_ok: bool,
    pub permutation_ok: bool,
    pub equals_full_twist: bool,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.exponent_sum_ok && self.permutation_ok && self.equals_full_twist
    }
}

pub fn verify_factorization(f: &Factorization) -> Result<VerificationReport, BraidError> {
    f.validate()?;
    let expected = (f.degree * f.degree.saturating_sub(1)) as i64;
    let sum = f.exponent_sum();
    let exponent_sum_ok = sum == expected;

    let expanded = f.expand()?;
    let target = {
        let ft = full_twist(f.degree)?;
        // Embed Δ²_d into B_strands when strands > degree.
        BraidWord::new(f.strands, ft.letters().to_vec())?
    };
    let permutation_ok = expanded.permutation_image().is_identity();
    // Fast-fail: a wrong exponent sum can never be the full twist.
    let equals_full_twist = if exponent_sum_ok {
        expanded.words_equal(&target)?
    } else {
        false
    };
    Ok(VerificationReport {
        exponent_sum: sum,
        expected_exponent_sum: expected,
        exponent_sum_ok,
        permutation_ok,
        equals_full_twist,
    })
}

// ---------------------------------------------------------------------------
// Garside normal form with permutation-braid atoms.
//
// Every word equals Δ^p A_1 .. A_k with each A_i a nontrivial, non-Δ
// permutation braid and every adjacent pair left-weighted (the starting set
// of A_{i+1} is contained in the finishing set of A_i). The tuple
// (p, A_1..A_k) is a complete invariant.
// ---------------------------------------------------------------------------

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NormalForm {
    pub strands: usize,
    pub delta_power: i64,
    pub simples: Vec<Permutation>,
}

fn omega(n: usize) -> Permutation {
    Permutation::from_map((0..n).map(|i| n - 1 - i).collect())
}

fn inversions(p: &Permutation) -> usize {
    let n = p.degree();
    let mut count = 0;
    for i in 0..n {
        for j in i + 1..n {
            if p.apply(i) > p.apply(j) {
                count += 1;
            }
        }
    }
    count
}

/// Descent set by position: j such that σ_j left-divides the simple.
fn starting_set(p: &Permutation) -> Vec<usize> {
    (1..p.degree())
        .filter(|&j| p.apply(j - 1) > p.apply(j))
        .collect()
}

/// j such that σ_j right-divides the simple.
fn finishing_set(p: &Permutation) -> Vec<usize> {
    let inv = p.inverse();
    (1..p.degree())
        .filter(|&j| inv.apply(j - 1) > inv.apply(j))
        .collect()
}

/// τ-twist Δ A Δ⁻¹ at the permutation level: conjugation by the reversal.
fn twist(p: &Permutation, w: &Permutation) -> Permutation {
    w.then(p).expect("degree").then(w).expect("degree")
}

pub fn normal_form(word: &BraidWord) -> NormalForm {
    let n = word.strands();
    let w = omega(n);
    let mut delta_power: i64 = 0;
    let mut simples: Vec<Permutation> = Vec::new();

    for &l in word.letters() {
        let i = l.unsigned_abs() as usize;
        let s = Permutation::transposition(n, i - 1, i);
        if l > 0 {
            simples.push(s);
        } else {
            // σ_i⁻¹ = Δ⁻¹ (Δ σ_i⁻¹); the leftward Δ⁻¹ twists what precedes it.
            delta_power -= 1;
            for a in simples.iter_mut() {
                *a = twist(a, &w);
            }
            simples.push(w.then(&s).expect("degree"));
        }
    }

    let full_len = n * (n - 1) / 2;
    loop {
        simples.retain(|a| !a.is_identity());
        // Pull any full Δ factors out to the front.
        if let Some(pos) = simples.iter().position(|a| inversions(a) == full_len) {
            delta_power += 1;
            for a in simples.iter_mut().take(pos) {
                *a = twist(a, &w);
            }
            simples.remove(pos);
            continue;
        }
        // One left-weighting pass.
        let mut changed = false;
        for i in 0..simples.len().saturating_sub(1) {
            loop {
                let fin = finishing_set(&simples[i]);
                let mov: Vec<usize> = starting_set(&simples[i + 1])
                    .into_iter()
                    .filter(|j| !fin.contains(j))
                    .collect();
                let Some(&j) = mov.first() else { break };
                let s = Permutation::transposition(n, j - 1, j);
                simples[i] = simples[i].then(&s).expect("degree");
                simples[i + 1] = s.then(&simples[i + 1]).expect("degree");
                changed = true;
            }
        }
        if !changed
            && !simples.iter().any(|a| a.is_identity() || inversions(a) == full_len)
        {
            break;
        }
    }

    NormalForm {
        strands: n,
        delta_power,
        simples,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(n: usize, ls: &[i64]) -> BraidWord {
        BraidWord::new(n, ls.to_vec()).unwrap()
    }

    #[test]
    fn compose_and_identity() {
        let id = BraidWord::identity(3).unwrap();
        let w = word(3, &[1, 2]);
        assert_eq!(id.compose(&w).unwrap(), w);
        let pair = word(2, &[1]).compose(&word(2, &[-1])).unwrap();
        assert_eq!(pair.len(), 2);
        assert!(pair.words_equal(&BraidWord::identity(2).unwrap()).unwrap());
    }

    #[test]
    fn compose_strand_mismatch() {
        let w2 = word(2, &[1]);
        let w3 = word(3, &[1]);
        assert_eq!(
            w2.compose(&w3),
            Err(BraidError::StrandMismatch(2, 3))
        );
    }

    #[test]
    fn invert_is_involution() {
        let w = word(4, &[1, -2, 3, 3, -1]);
        assert_eq!(w.invert().invert(), w);
        assert_eq!(word(3, &[1, 2]).invert(), word(3, &[-2, -1]));
        assert_eq!(BraidWord::identity(3).unwrap().invert().len(), 0);
    }

    #[test]
    fn permutation_image_basics() {
        let s1 = word(3, &[1]);
        assert_eq!(
            s1.permutation_image(),
            Permutation::from_cycles(3, &[vec![1, 2]]).unwrap()
        );
        assert!(word(2, &[1, 1]).permutation_image().is_identity());
        for d in 2..=4 {
            assert!(full_twist(d).unwrap().permutation_image().is_identity());
        }
    }

    #[test]
    fn half_twist_words() {
        assert_eq!(half_twist(2).unwrap(), word(2, &[1]));
        let ft3 = full_twist(3).unwrap();
        assert_eq!(ft3.len(), 6);
        assert_eq!(ft3.exponent_sum(), 6);
        assert!(half_twist(1).is_err());
    }

    #[test]
    fn braid_relation_and_commutation() {
        assert!(word(3, &[1, 2, 1]).words_equal(&word(3, &[2, 1, 2])).unwrap());
        assert!(word(4, &[1, 3]).words_equal(&word(4, &[3, 1])).unwrap());
        assert!(!word(2, &[1]).words_equal(&word(2, &[-1])).unwrap());
    }

    #[test]
    fn full_twist_is_central() {
        let ft = full_twist(4).unwrap();
        for gen in 1..=3i64 {
            let g = word(4, &[gen]);
            let lhs = ft.compose(&g).unwrap();
            let rhs = g.compose(&ft).unwrap();
            assert!(lhs.words_equal(&rhs).unwrap());
        }
    }

    #[test]
    fn normal_form_of_negative_words() {
        // σ1 σ1⁻¹ and the empty word agree; σ1⁻¹ itself has Δ-power -1 in B_2.
        let nf = normal_form(&word(2, &[-1]));
        assert_eq!(nf.delta_power, -1);
        assert!(nf.simples.is_empty());
        // Δ² expressed two ways.
        let a = word(3, &[1, 2, 1, 1, 2, 1]);
        assert!(a.words_equal(&full_twist(3).unwrap()).unwrap());
        let b = word(3, &[2, 1, 2, 1, 2, 1]);
        assert!(b.words_equal(&full_twist(3).unwrap()).unwrap());
    }

    #[test]
    fn expand_single_factors() {
        let f = Factorization {
            strands: 2,
            degree: 2,
            factors: vec![Factor {
                conjugator: vec![],
                exponent: 2,
            }],
        };
        assert_eq!(f.expand().unwrap(), word(2, &[1, 1]));

        let two = Factorization {
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
        assert_eq!(two.expand().unwrap(), word(2, &[1, 1]));

        let conj = Factorization {
            strands: 3,
            degree: 3,
            factors: vec![Factor {
                conjugator: vec![2],
                exponent: 1,
            }],
        };
        assert_eq!(conj.expand().unwrap(), word(3, &[2, 1, -2]));
    }

    #[test]
    fn verify_delta2_2() {
        let good = Factorization {
            strands: 2,
            degree: 2,
            factors: vec![Factor {
                conjugator: vec![],
                exponent: 2,
            }],
        };
        let report = verify_factorization(&good).unwrap();
        assert!(report.all_passed());

        let short = Factorization {
            strands: 2,
            degree: 2,
            factors: vec![Factor {
                conjugator: vec![],
                exponent: 1,
            }],
        };
        let report = verify_factorization(&short).unwrap();
        assert!(!report.exponent_sum_ok);
        assert!(!report.all_passed());
    }

    #[test]
    fn verify_rejects_sigma1_only_counterfeit() {
        // Six copies of σ1 in B_3: exponent sum matches Δ²_3 but the word
        // does not.
        let fake = Factorization {
            strands: 3,
            degree: 3,
            factors: (0..6)
                .map(|_| Factor {
                    conjugator: vec![],
                    exponent: 1,
                })
                .collect(),
        };
        let report = verify_factorization(&fake).unwrap();
        assert!(report.exponent_sum_ok);
        assert!(report.permutation_ok);
        assert!(!report.equals_full_twist);
        assert!(!report.all_passed());
    }

    #[test]
    fn bad_exponent_rejected() {
        let f = Factorization {
            strands: 2,
            degree: 2,
            factors: vec![Factor {
                conjugator: vec![],
                exponent: 4,
            }],
        };
        assert_eq!(f.validate(), Err(BraidError::BadExponent(4)));
    }
}
