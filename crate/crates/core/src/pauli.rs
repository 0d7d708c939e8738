//! Pauli letters, strings and their exact product rules.
//!
//! A [`PauliString`] is a tensor product of single-qubit Pauli operators. Its
//! text form reads left to right from the most significant tensor factor, so
//! `"XZ"` denotes X ⊗ Z and the *last* character acts on the least significant
//! qubit. Internally a string of length n is also addressed by *level*:
//! level `l` is the qubit with index weight `2^l`, i.e. text position
//! `n - 1 - l`.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Single-qubit Pauli operator.
///
/// The declaration order fixes the canonical letter ordering I < X < Y < Z
/// used for sorted decomposition output.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PauliLetter {
    I,
    X,
    Y,
    Z,
}

/// All letters in canonical order.
pub const LETTERS: [PauliLetter; 4] = [
    PauliLetter::I,
    PauliLetter::X,
    PauliLetter::Y,
    PauliLetter::Z,
];

impl PauliLetter {
    pub fn from_char(c: char) -> Result<Self> {
        match c {
            'I' => Ok(PauliLetter::I),
            'X' => Ok(PauliLetter::X),
            'Y' => Ok(PauliLetter::Y),
            'Z' => Ok(PauliLetter::Z),
            other => Err(Error::InvalidPauliLetter(other)),
        }
    }

    pub fn to_char(self) -> char {
        match self {
            PauliLetter::I => 'I',
            PauliLetter::X => 'X',
            PauliLetter::Y => 'Y',
            PauliLetter::Z => 'Z',
        }
    }

    /// True when the letter's nonzero entries lie on the anti-diagonal (X, Y),
    /// so tensoring with it swaps the row and column bit at its level.
    pub fn is_antidiagonal(self) -> bool {
        matches!(self, PauliLetter::X | PauliLetter::Y)
    }

    /// Sign relating the second-row nonzero entry to the first-row one:
    /// +1 for I and X, -1 for Y and Z. Doubling a sparse form under `self ⊗ P`
    /// copies the sign array scaled by this factor.
    pub fn extension_sign(self) -> i8 {
        match self {
            PauliLetter::I | PauliLetter::X => 1,
            PauliLetter::Y | PauliLetter::Z => -1,
        }
    }

    /// Dense 2x2 matrix, row-major.
    pub fn matrix(self) -> [[Complex64; 2]; 2] {
        let o = Complex64::new(0.0, 0.0);
        let p = Complex64::new(1.0, 0.0);
        let n = Complex64::new(-1.0, 0.0);
        let i = Complex64::new(0.0, 1.0);
        let mi = Complex64::new(0.0, -1.0);
        match self {
            PauliLetter::I => [[p, o], [o, p]],
            PauliLetter::X => [[o, p], [p, o]],
            PauliLetter::Y => [[o, mi], [i, o]],
            PauliLetter::Z => [[p, o], [o, n]],
        }
    }
}

impl fmt::Display for PauliLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_char())
    }
}

/// Element of the cyclic group {1, i, -1, -i}, stored exactly as a power of i.
///
/// Keeping phases in this group (instead of as floating-point complex numbers)
/// makes products of Pauli strings exact and bit-for-bit reproducible.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Phase {
    /// The represented value is i^exp with exp in 0..4.
    exp: u8,
}

impl Phase {
    pub const ONE: Phase = Phase { exp: 0 };
    pub const I: Phase = Phase { exp: 1 };
    pub const MINUS_ONE: Phase = Phase { exp: 2 };
    pub const MINUS_I: Phase = Phase { exp: 3 };

    /// i raised to an arbitrary (possibly negative) power.
    pub fn i_power(e: i64) -> Phase {
        Phase {
            exp: e.rem_euclid(4) as u8,
        }
    }

    /// (-i) raised to an arbitrary power; the global phase of a string with
    /// `e` letters Y.
    pub fn minus_i_power(e: i64) -> Phase {
        Phase::i_power(-e)
    }

    pub fn to_complex(self) -> Complex64 {
        match self.exp {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        }
    }

    /// Multiply `z` by the phase using component swaps and negations only,
    /// so the rotation is exact (no floating-point products with zero).
    pub fn apply(self, z: Complex64) -> Complex64 {
        match self.exp {
            0 => z,
            1 => Complex64::new(-z.im, z.re),
            2 => Complex64::new(-z.re, -z.im),
            _ => Complex64::new(z.im, -z.re),
        }
    }
}

impl std::ops::Mul for Phase {
    type Output = Phase;

    fn mul(self, rhs: Phase) -> Phase {
        Phase {
            exp: (self.exp + rhs.exp) % 4,
        }
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self.exp {
            0 => "+1",
            1 => "+i",
            2 => "-1",
            _ => "-i",
        };
        write!(f, "{s}")
    }
}

/// Product of two Pauli letters as an exact phased letter: a·b = phase·letter.
pub fn letter_product(a: PauliLetter, b: PauliLetter) -> (Phase, PauliLetter) {
    use PauliLetter::{I, X, Y, Z};
    match (a, b) {
        (I, r) => (Phase::ONE, r),
        (l, I) => (Phase::ONE, l),
        (X, X) | (Y, Y) | (Z, Z) => (Phase::ONE, I),
        (X, Y) => (Phase::I, Z),
        (Y, X) => (Phase::MINUS_I, Z),
        (Y, Z) => (Phase::I, X),
        (Z, Y) => (Phase::MINUS_I, X),
        (Z, X) => (Phase::I, Y),
        (X, Z) => (Phase::MINUS_I, Y),
    }
}

/// Non-empty tensor product of Pauli letters.
///
/// Ordering and equality are lexicographic on the text form with I < X < Y < Z,
/// which is the canonical term order of a decomposition.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PauliString {
    /// Letters in text order: `letters[0]` is the most significant factor.
    letters: Vec<PauliLetter>,
}

impl PauliString {
    /// Build from letters in text order (most significant factor first).
    pub fn from_letters(letters: Vec<PauliLetter>) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::EmptyPauliString);
        }
        Ok(PauliString { letters })
    }

    /// Build from letters indexed by level (level 0 first, i.e. the reverse of
    /// text order). This is the order a root-to-leaf tree path produces.
    pub fn from_level_letters(levels: &[PauliLetter]) -> Result<Self> {
        let mut letters: Vec<PauliLetter> = levels.to_vec();
        letters.reverse();
        PauliString::from_letters(letters)
    }

    /// The string `letter^n`.
    pub fn repeated(letter: PauliLetter, n: usize) -> Result<Self> {
        PauliString::from_letters(vec![letter; n])
    }

    /// Number of qubits (letters).
    pub fn qubit_count(&self) -> usize {
        self.letters.len()
    }

    /// The i-th tensor factor counting from the most significant (text index).
    pub fn factor(&self, i: usize) -> PauliLetter {
        self.letters[i]
    }

    /// The letter acting on level `l`, i.e. text position `n - 1 - l`.
    pub fn letter_at_level(&self, l: usize) -> PauliLetter {
        self.letters[self.letters.len() - 1 - l]
    }

    /// Letters in text order.
    pub fn factors(&self) -> &[PauliLetter] {
        &self.letters
    }

    /// Number of letters Y; determines the global phase of the sparse form.
    pub fn y_count(&self) -> u32 {
        self.letters
            .iter()
            .filter(|&&l| l == PauliLetter::Y)
            .count() as u32
    }

    /// Bit mask with bit `l` set when the letter at level `l` is X or Y.
    /// Only meaningful for strings of at most 64 letters.
    pub fn x_mask(&self) -> u64 {
        debug_assert!(self.letters.len() <= 64);
        let n = self.letters.len();
        let mut mask = 0u64;
        for l in 0..n {
            if self.letter_at_level(l).is_antidiagonal() {
                mask |= 1 << l;
            }
        }
        mask
    }

    /// Letterwise product with an exact group phase: self·other = phase·string.
    pub fn string_product(&self, other: &PauliString) -> Result<(Phase, PauliString)> {
        if self.qubit_count() != other.qubit_count() {
            return Err(Error::QubitCountMismatch {
                left: self.qubit_count(),
                right: other.qubit_count(),
            });
        }
        let mut phase = Phase::ONE;
        let mut letters = Vec::with_capacity(self.letters.len());
        for (&a, &b) in self.letters.iter().zip(&other.letters) {
            let (p, l) = letter_product(a, b);
            phase = phase * p;
            letters.push(l);
        }
        Ok((phase, PauliString { letters }))
    }

    /// New string with `letter` prepended as the new most significant factor.
    pub fn with_leading(&self, letter: PauliLetter) -> PauliString {
        let mut letters = Vec::with_capacity(self.letters.len() + 1);
        letters.push(letter);
        letters.extend_from_slice(&self.letters);
        PauliString { letters }
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.letters {
            write!(f, "{}", l.to_char())?;
        }
        Ok(())
    }
}

impl FromStr for PauliString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let letters = s
            .chars()
            .map(PauliLetter::from_char)
            .collect::<Result<Vec<_>>>()?;
        PauliString::from_letters(letters)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ps(s: &str) -> PauliString {
        s.parse().unwrap()
    }

    #[test]
    fn antidiagonality_by_letter() {
        assert!(!PauliLetter::I.is_antidiagonal());
        assert!(PauliLetter::X.is_antidiagonal());
        assert!(PauliLetter::Y.is_antidiagonal());
        assert!(!PauliLetter::Z.is_antidiagonal());
    }

    #[test]
    fn extension_signs() {
        assert_eq!(PauliLetter::I.extension_sign(), 1);
        assert_eq!(PauliLetter::X.extension_sign(), 1);
        assert_eq!(PauliLetter::Y.extension_sign(), -1);
        assert_eq!(PauliLetter::Z.extension_sign(), -1);
    }

    #[test]
    fn phase_group_arithmetic() {
        assert_eq!(Phase::I * Phase::I, Phase::MINUS_ONE);
        assert_eq!(Phase::I * Phase::MINUS_I, Phase::ONE);
        assert_eq!(Phase::MINUS_ONE * Phase::MINUS_ONE, Phase::ONE);
        assert_eq!(Phase::i_power(-1), Phase::MINUS_I);
        assert_eq!(Phase::minus_i_power(2), Phase::MINUS_ONE);
        assert_eq!(Phase::minus_i_power(4), Phase::ONE);
    }

    #[test]
    fn phase_apply_is_exact_rotation() {
        let z = Complex64::new(3.0, -2.0);
        assert_eq!(Phase::ONE.apply(z), z);
        assert_eq!(Phase::I.apply(z), Complex64::new(2.0, 3.0));
        assert_eq!(Phase::MINUS_ONE.apply(z), Complex64::new(-3.0, 2.0));
        assert_eq!(Phase::MINUS_I.apply(z), Complex64::new(-2.0, -3.0));
        for p in [Phase::ONE, Phase::I, Phase::MINUS_ONE, Phase::MINUS_I] {
            assert_eq!(p.apply(z), p.to_complex() * z);
        }
    }

    #[test]
    fn letter_product_examples() {
        use PauliLetter::{I, X, Y, Z};
        assert_eq!(letter_product(X, Y), (Phase::I, Z));
        assert_eq!(letter_product(Y, X), (Phase::MINUS_I, Z));
        assert_eq!(letter_product(Z, Z), (Phase::ONE, I));
        assert_eq!(letter_product(I, Y), (Phase::ONE, Y));
    }

    #[test]
    fn letter_product_matches_2x2_multiplication() {
        // Independent oracle: multiply the dense 2x2 matrices directly.
        fn mul2(a: [[Complex64; 2]; 2], b: [[Complex64; 2]; 2]) -> [[Complex64; 2]; 2] {
            let mut c = [[Complex64::new(0.0, 0.0); 2]; 2];
            for i in 0..2 {
                for j in 0..2 {
                    for t in 0..2 {
                        c[i][j] += a[i][t] * b[t][j];
                    }
                }
            }
            c
        }
        for a in LETTERS {
            for b in LETTERS {
                let (phase, l) = letter_product(a, b);
                let expect = mul2(a.matrix(), b.matrix());
                let got = l.matrix();
                for i in 0..2 {
                    for j in 0..2 {
                        assert_eq!(
                            phase.to_complex() * got[i][j],
                            expect[i][j],
                            "{a}{b} -> {phase}{l}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn string_product_examples() {
        let (p, s) = ps("XZ").string_product(&ps("XZ")).unwrap();
        assert_eq!((p, s), (Phase::ONE, ps("II")));

        let (p, s) = ps("XI").string_product(&ps("YI")).unwrap();
        assert_eq!((p, s), (Phase::I, ps("ZI")));

        let (p, s) = ps("XY").string_product(&ps("YX")).unwrap();
        assert_eq!((p, s), (Phase::ONE, ps("ZZ")));
    }

    #[test]
    fn string_product_length_mismatch() {
        let err = ps("X").string_product(&ps("XX")).unwrap_err();
        assert_eq!(err, Error::QubitCountMismatch { left: 1, right: 2 });
    }

    #[test]
    fn text_order_and_levels() {
        let s = ps("XZ");
        assert_eq!(s.factor(0), PauliLetter::X);
        assert_eq!(s.factor(1), PauliLetter::Z);
        // Level 0 is the least significant qubit = last text character.
        assert_eq!(s.letter_at_level(0), PauliLetter::Z);
        assert_eq!(s.letter_at_level(1), PauliLetter::X);
        assert_eq!(s.x_mask(), 0b10);
        assert_eq!(s.to_string(), "XZ");
    }

    #[test]
    fn level_order_construction() {
        use PauliLetter::{X, Z};
        // Levels [Z, X] mean sigma_0 = Z, sigma_1 = X, i.e. text "XZ".
        let s = PauliString::from_level_letters(&[Z, X]).unwrap();
        assert_eq!(s, ps("XZ"));
    }

    #[test]
    fn parse_rejects_bad_input() {
        assert_eq!("".parse::<PauliString>().unwrap_err(), Error::EmptyPauliString);
        assert_eq!(
            "XQ".parse::<PauliString>().unwrap_err(),
            Error::InvalidPauliLetter('Q')
        );
    }

    #[test]
    fn canonical_ordering() {
        let mut v = vec![ps("ZI"), ps("IX"), ps("II"), ps("YY"), ps("IZ"), ps("IY")];
        v.sort();
        let text: Vec<String> = v.iter().map(|s| s.to_string()).collect();
        assert_eq!(text, ["II", "IX", "IY", "IZ", "YY", "ZI"]);
    }
}
