//! Automatic-sequence generators and functional equations for their
//! generating functions.
//!
//! The regular paperfolding sequence is available both through its closed
//! recurrence (every fourth term starting at 0 is 1, every fourth starting
//! at 2 is 0, and odd-indexed terms copy the halved index) and as the coding
//! of a morphism fixed point. The two must agree, and the test suite holds
//! them to that.

use crate::poly::IntPoly;
use crate::series::{poly_quotient_series, RatSeries, SeriesError};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SeqError {
    #[error("morphism image of seed '{seed}' does not begin with the seed")]
    NotProlongable { seed: char },
    #[error("letter '{letter}' reachable from the seed has no morphism image")]
    MissingImage { letter: char },
    #[error("letter '{letter}' reachable from the seed has an empty morphism image")]
    EmptyImage { letter: char },
    #[error("letter '{letter}' reachable from the seed has no coding value")]
    MissingCoding { letter: char },
    #[error("fixed point stalls at length {len}, cannot produce {want} terms")]
    FixedPointStalls { len: usize, want: usize },
    #[error("functional equation requires B(0) != 0")]
    ZeroDenominatorConstant,
    #[error("functional equation requires C != 0")]
    ZeroShiftPolynomial,
    #[error("functional equation requires k >= 2, got {0}")]
    KTooSmall(usize),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// Morphism + coding description of a sequence: the fixed point of the
/// morphism at `seed`, mapped through `coding`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphicSpec {
    pub morphism: BTreeMap<char, String>,
    pub coding: BTreeMap<char, i64>,
    pub seed: char,
}

impl MorphicSpec {
    /// Checks prolongability and that every reachable letter has a nonempty
    /// image and a coding value.
    pub fn validate(&self) -> Result<(), SeqError> {
        let seed_image = self
            .morphism
            .get(&self.seed)
            .ok_or(SeqError::MissingImage { letter: self.seed })?;
        if !seed_image.starts_with(self.seed) {
            return Err(SeqError::NotProlongable { seed: self.seed });
        }
        let mut reachable = BTreeSet::new();
        let mut stack = vec![self.seed];
        while let Some(letter) = stack.pop() {
            if !reachable.insert(letter) {
                continue;
            }
            let image = self
                .morphism
                .get(&letter)
                .ok_or(SeqError::MissingImage { letter })?;
            if image.is_empty() {
                return Err(SeqError::EmptyImage { letter });
            }
            if !self.coding.contains_key(&letter) {
                return Err(SeqError::MissingCoding { letter });
            }
            stack.extend(image.chars());
        }
        Ok(())
    }

    /// Iterates the morphism on the seed until at least `n` letters exist,
    /// then applies the coding.
    pub fn prefix(&self, n: usize) -> Result<Vec<i64>, SeqError> {
        self.validate()?;
        let mut word: Vec<char> = vec![self.seed];
        while word.len() < n {
            let next: Vec<char> = word.iter().flat_map(|c| self.morphism[c].chars()).collect();
            if next.len() <= word.len() {
                return Err(SeqError::FixedPointStalls {
                    len: next.len(),
                    want: n,
                });
            }
            word = next;
        }
        Ok(word[..n].iter().map(|c| self.coding[c]).collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SequenceKind {
    PaperfoldingClosed,
    PaperfoldingMorphic,
    ThueMorsePm1,
    Cantor,
    CustomMorphic(MorphicSpec),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceSpec {
    pub kind: SequenceKind,
}

impl SequenceSpec {
    pub fn paperfolding() -> Self {
        SequenceSpec {
            kind: SequenceKind::PaperfoldingClosed,
        }
    }

    pub fn paperfolding_morphic() -> Self {
        SequenceSpec {
            kind: SequenceKind::PaperfoldingMorphic,
        }
    }

    pub fn thue_morse_pm1() -> Self {
        SequenceSpec {
            kind: SequenceKind::ThueMorsePm1,
        }
    }

    pub fn cantor() -> Self {
        SequenceSpec {
            kind: SequenceKind::Cantor,
        }
    }

    pub fn custom(spec: MorphicSpec) -> Self {
        SequenceSpec {
            kind: SequenceKind::CustomMorphic(spec),
        }
    }

    /// Parses the CLI-facing sequence name.
    pub fn by_name(name: &str) -> Option<Self> {
        match name {
            "paperfolding" | "paperfolding-closed" => Some(Self::paperfolding()),
            "paperfolding-morphic" => Some(Self::paperfolding_morphic()),
            "thue-morse-pm1" => Some(Self::thue_morse_pm1()),
            "cantor" => Some(Self::cantor()),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self.kind {
            SequenceKind::PaperfoldingClosed => "paperfolding-closed",
            SequenceKind::PaperfoldingMorphic => "paperfolding-morphic",
            SequenceKind::ThueMorsePm1 => "thue-morse-pm1",
            SequenceKind::Cantor => "cantor",
            SequenceKind::CustomMorphic(_) => "custom-morphic",
        }
    }

    /// First `n` terms, 0-indexed.
    pub fn prefix(&self, n: usize) -> Result<Vec<i64>, SeqError> {
        match &self.kind {
            SequenceKind::PaperfoldingClosed => Ok(paperfolding_closed(n)),
            SequenceKind::PaperfoldingMorphic => paperfolding_morphic_spec().prefix(n),
            SequenceKind::ThueMorsePm1 => Ok(thue_morse_pm1(n)),
            SequenceKind::Cantor => cantor_morphic_spec().prefix(n),
            SequenceKind::CustomMorphic(spec) => spec.prefix(n),
        }
    }
}

/// The paperfolding morphism a->ab, b->cb, c->ad, d->cd with coding
/// a,b -> 1 and c,d -> 0.
pub fn paperfolding_morphic_spec() -> MorphicSpec {
    MorphicSpec {
        morphism: BTreeMap::from([
            ('a', "ab".to_string()),
            ('b', "cb".to_string()),
            ('c', "ad".to_string()),
            ('d', "cd".to_string()),
        ]),
        coding: BTreeMap::from([('a', 1), ('b', 1), ('c', 0), ('d', 0)]),
        seed: 'a',
    }
}

/// The Cantor morphism 1->101, 0->000 over {0,1}, seeded at 1.
pub fn cantor_morphic_spec() -> MorphicSpec {
    MorphicSpec {
        morphism: BTreeMap::from([('1', "101".to_string()), ('0', "000".to_string())]),
        coding: BTreeMap::from([('1', 1), ('0', 0)]),
        seed: '1',
    }
}

/// Closed-form paperfolding terms: index multiples of 4 give 1, indices
/// congruent to 2 mod 4 give 0, and odd indices copy the halved index.
pub fn paperfolding_closed(n: usize) -> Vec<i64> {
    (0..n).map(paperfolding_term).collect()
}

fn paperfolding_term(mut i: usize) -> i64 {
    while i % 2 == 1 {
        i /= 2;
    }
    if i.is_multiple_of(4) {
        1
    } else {
        0
    }
}

/// Thue-Morse over {-1, 1}: the parity of ones in the binary expansion,
/// with t_0 = 1, t_{2n} = t_n, t_{2n+1} = -t_n.
pub fn thue_morse_pm1(n: usize) -> Vec<i64> {
    (0..n)
        .map(|i| if (i.count_ones() & 1) == 0 { 1 } else { -1 })
        .collect()
}

/// A Mahler-type functional equation f(x) = A(x)/B(x) + C(x) f(x^k).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctionalEquation {
    a: IntPoly,
    b: IntPoly,
    c: IntPoly,
    k: usize,
}

impl FunctionalEquation {
    pub fn new(a: IntPoly, b: IntPoly, c: IntPoly, k: usize) -> Result<Self, SeqError> {
        if b.coeff(0).is_zero() {
            return Err(SeqError::ZeroDenominatorConstant);
        }
        if c.is_zero() {
            return Err(SeqError::ZeroShiftPolynomial);
        }
        if k < 2 {
            return Err(SeqError::KTooSmall(k));
        }
        Ok(FunctionalEquation { a, b, c, k })
    }

    /// The equation satisfied by the paperfolding generating function:
    /// f(x) = 1/(1 - x^4) + x f(x^2).
    pub fn paperfolding() -> Self {
        FunctionalEquation::new(
            IntPoly::one(),
            IntPoly::from_i64(&[1, 0, 0, 0, -1]),
            IntPoly::from_i64(&[0, 1]),
            2,
        )
        .expect("built-in equation is well formed")
    }

    pub fn a(&self) -> &IntPoly {
        &self.a
    }
    pub fn b(&self) -> &IntPoly {
        &self.b
    }
    pub fn c(&self) -> &IntPoly {
        &self.c
    }
    pub fn k(&self) -> usize {
        self.k
    }

    /// deg A (0 for the zero polynomial).
    pub fn alpha(&self) -> usize {
        self.a.degree().unwrap_or(0)
    }
    /// deg B.
    pub fn beta(&self) -> usize {
        self.b.degree().unwrap_or(0)
    }
    /// deg C.
    pub fn gamma(&self) -> usize {
        self.c.degree().unwrap_or(0)
    }
    /// Order of vanishing of C at 0.
    pub fn s(&self) -> usize {
        self.c.order_of_vanishing()
    }
    /// Largest coefficient magnitude of C.
    pub fn eta(&self) -> BigInt {
        self.c.max_abs_coeff()
    }

    /// The tightest constant zeta with |C(1/b)| >= zeta * (1/b)^s at the
    /// given base, namely |C(1/b)| * b^s.
    pub fn zeta(&self, b: u64) -> BigRational {
        let x = BigRational::new(BigInt::from(1), BigInt::from(b));
        let bs = BigRational::from_integer(BigInt::from(b).pow(self.s() as u32));
        self.c.eval_rational(&x).abs() * bs
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FeCheckOutcome {
    pub ok: bool,
    pub first_mismatch: Option<usize>,
}

/// Compares the series of the sequence against A/B + C * f(x^k)
/// coefficientwise through `order` terms.
pub fn check_functional_equation(
    seq: &SequenceSpec,
    fe: &FunctionalEquation,
    order: usize,
) -> Result<FeCheckOutcome, SeqError> {
    assert!(order >= 1, "order must be at least 1");
    let terms = seq.prefix(order)?;
    let f = RatSeries::from_terms(&terms, order)?;
    let rhs = poly_quotient_series(fe.a(), fe.b(), order)?
        .add(&RatSeries::from_poly(fe.c(), order).mul(&f.spread(fe.k())));
    let first_mismatch = f.first_mismatch(&rhs);
    Ok(FeCheckOutcome {
        ok: first_mismatch.is_none(),
        first_mismatch,
    })
}
