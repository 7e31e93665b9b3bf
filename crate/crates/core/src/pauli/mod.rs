//! Pauli strings, their 3-bit packed encoding and the parity anticommutation
//! test.
//!
//! Each single-qubit operator is packed into three bits:
//!
//! | letter | code  |
//! |--------|-------|
//! | `I`    | `000` |
//! | `X`    | `110` |
//! | `Y`    | `101` |
//! | `Z`    | `011` |
//!
//! `a & b` has an odd popcount exactly when the two letters are distinct and
//! both non-identity, so the parity of `popcount(enc(a) & enc(b))` over the
//! whole string is the parity of the number of anticommuting positions.
//!
//! Layout: position `i` lives in word `i / 21` at bits `3*(i % 21) ..
//! 3*(i % 21) + 3`, with the code's least significant bit at the lowest bit
//! position (codes above are written most significant bit first). Bit 63 of
//! every word and all bits past the last position are zero. `"XYZI"` is thus
//! the single word `0b000_011_101_110`.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

pub mod oracle;

/// Positions packed per 64-bit word.
pub const CODES_PER_WORD: usize = 21;
const CODE_MASK: u64 = 0b111;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PauliError {
    #[error("no Pauli strings in input")]
    Empty,
    #[error("Pauli string of length {found} on line {line}, expected {expected}")]
    MixedLength {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("invalid Pauli symbol {symbol:?} on line {line}")]
    BadSymbol { line: usize, symbol: char },
    #[error("Pauli strings have different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("dense oracle limited to {max} qubits, got {found}")]
    TooLarge { max: usize, found: usize },
    #[error("vertex {0} queried against itself")]
    SameVertex(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[repr(u8)]
pub enum Pauli {
    I = 0,
    X = 1,
    Y = 2,
    Z = 3,
}

impl Pauli {
    pub const ALL: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'I' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    #[inline]
    pub fn code(self) -> u64 {
        match self {
            Pauli::I => 0b000,
            Pauli::X => 0b110,
            Pauli::Y => 0b101,
            Pauli::Z => 0b011,
        }
    }

    pub fn from_code(code: u64) -> Option<Self> {
        match code {
            0b000 => Some(Pauli::I),
            0b110 => Some(Pauli::X),
            0b101 => Some(Pauli::Y),
            0b011 => Some(Pauli::Z),
            _ => None,
        }
    }
}

/// A tensor product of single-qubit Paulis, leftmost letter is position 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PauliString(Vec<Pauli>);

impl PauliString {
    pub fn new(ops: Vec<Pauli>) -> Result<Self, PauliError> {
        if ops.is_empty() {
            return Err(PauliError::Empty);
        }
        Ok(Self(ops))
    }

    /// Parses a bare `{I,X,Y,Z}` word. `line` is only used in errors.
    pub fn parse(s: &str, line: usize) -> Result<Self, PauliError> {
        let ops = s
            .chars()
            .map(|c| Pauli::from_char(c).ok_or(PauliError::BadSymbol { line, symbol: c }))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(ops)
    }

    pub fn num_qubits(&self) -> usize {
        self.0.len()
    }

    pub fn ops(&self) -> &[Pauli] {
        &self.0
    }

    pub fn encode(&self) -> EncodedPauli {
        let mut words = alloc::vec![0u64; words_for(self.0.len())];
        encode_into(&self.0, &mut words);
        EncodedPauli {
            words,
            num_qubits: self.0.len(),
        }
    }
}

impl FromStr for PauliString {
    type Err = PauliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s, 1)
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.0 {
            fmt::Write::write_char(f, p.as_char())?;
        }
        Ok(())
    }
}

/// Number of 64-bit words needed for `num_qubits` packed positions.
#[inline]
pub fn words_for(num_qubits: usize) -> usize {
    num_qubits.div_ceil(CODES_PER_WORD)
}

fn encode_into(ops: &[Pauli], words: &mut [u64]) {
    for (i, p) in ops.iter().enumerate() {
        words[i / CODES_PER_WORD] |= p.code() << (3 * (i % CODES_PER_WORD));
    }
}

/// Packed 3-bit encoding of one Pauli string.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EncodedPauli {
    words: Vec<u64>,
    num_qubits: usize,
}

impl EncodedPauli {
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn num_bits(&self) -> usize {
        3 * self.num_qubits
    }

    pub fn decode(&self) -> PauliString {
        decode_words(&self.words, self.num_qubits)
    }

    pub fn anticommutes(&self, other: &EncodedPauli) -> Result<bool, PauliError> {
        if self.num_qubits != other.num_qubits {
            return Err(PauliError::LengthMismatch(self.num_qubits, other.num_qubits));
        }
        Ok(anticommutes_words(&self.words, &other.words))
    }
}

fn decode_words(words: &[u64], num_qubits: usize) -> PauliString {
    let ops = (0..num_qubits)
        .map(|i| {
            let code = (words[i / CODES_PER_WORD] >> (3 * (i % CODES_PER_WORD))) & CODE_MASK;
            Pauli::from_code(code).expect("corrupt Pauli encoding")
        })
        .collect();
    PauliString(ops)
}

/// Parity test on packed words of equal length.
///
/// The ANDed words are XOR-folded before a single popcount; XOR preserves the
/// parity of the total number of set bits.
#[inline]
pub fn anticommutes_words(a: &[u64], b: &[u64]) -> bool {
    debug_assert_eq!(a.len(), b.len());
    let folded = a.iter().zip(b).fold(0u64, |acc, (x, y)| acc ^ (x & y));
    folded.count_ones() & 1 == 1
}

/// Reference letter-by-letter test: counts positions holding two distinct
/// non-identity letters.
pub fn anticommutes_chars(a: &[u8], b: &[u8]) -> bool {
    let mut mismatches = 0usize;
    for (&x, &y) in a.iter().zip(b) {
        if x != b'I' && y != b'I' && x != y {
            mismatches += 1;
        }
    }
    mismatches % 2 == 1
}

/// The vertex universe: `n` strings of a common length with their packed
/// encodings stored contiguously (`stride` words per string).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PauliSet {
    strings: Vec<PauliString>,
    words: Vec<u64>,
    stride: usize,
    num_qubits: usize,
}

impl PauliSet {
    pub fn new(strings: Vec<PauliString>) -> Result<Self, PauliError> {
        let first = strings.first().ok_or(PauliError::Empty)?;
        let num_qubits = first.num_qubits();
        for (i, s) in strings.iter().enumerate() {
            if s.num_qubits() != num_qubits {
                return Err(PauliError::MixedLength {
                    line: i + 1,
                    expected: num_qubits,
                    found: s.num_qubits(),
                });
            }
        }
        let stride = words_for(num_qubits);
        let mut words = alloc::vec![0u64; stride * strings.len()];
        for (s, chunk) in strings.iter().zip(words.chunks_exact_mut(stride)) {
            encode_into(s.ops(), chunk);
        }
        Ok(Self {
            strings,
            words,
            stride,
            num_qubits,
        })
    }

    /// Parses one bare string per entry.
    pub fn from_strs<'a, I>(items: I) -> Result<Self, PauliError>
    where
        I: IntoIterator<Item = &'a str>,
    {
        let strings = items
            .into_iter()
            .enumerate()
            .map(|(i, s)| PauliString::parse(s, i + 1))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(strings)
    }

    pub fn len(&self) -> usize {
        self.strings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.strings.is_empty()
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn strings(&self) -> &[PauliString] {
        &self.strings
    }

    pub fn string(&self, i: usize) -> &PauliString {
        &self.strings[i]
    }

    #[inline]
    pub fn encoded_words(&self, i: usize) -> &[u64] {
        &self.words[i * self.stride..(i + 1) * self.stride]
    }

    pub fn encoded(&self, i: usize) -> EncodedPauli {
        EncodedPauli {
            words: self.encoded_words(i).to_vec(),
            num_qubits: self.num_qubits,
        }
    }

    #[inline]
    pub fn anticommutes(&self, i: usize, j: usize) -> bool {
        anticommutes_words(self.encoded_words(i), self.encoded_words(j))
    }

    /// Edge of the commutation (complement) graph: distinct vertices whose
    /// strings commute. Duplicated strings are adjacent.
    pub fn complement_edge(&self, i: usize, j: usize) -> Result<bool, PauliError> {
        if i == j {
            return Err(PauliError::SameVertex(i));
        }
        Ok(!self.anticommutes(i, j))
    }

    /// Heap words held by the encodings.
    pub fn encoded_word_count(&self) -> usize {
        self.words.len()
    }

    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(self.len() * (self.num_qubits + 1));
        for s in &self.strings {
            fmt::Write::write_fmt(&mut out, format_args!("{s}\n")).unwrap();
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;
    use proptest::prelude::*;

    fn enc(s: &str) -> EncodedPauli {
        s.parse::<PauliString>().unwrap().encode()
    }

    #[test]
    fn single_letter_codes() {
        assert_eq!(enc("X").words(), &[0b110]);
        assert_eq!(enc("Y").words(), &[0b101]);
        assert_eq!(enc("Z").words(), &[0b011]);
        assert_eq!(enc("I").words(), &[0b000]);
    }

    #[test]
    fn xyzi_packs_lsb_first() {
        let e = enc("XYZI");
        assert_eq!(e.words(), &[0b000_011_101_110]);
        assert_eq!(e.num_bits(), 12);
    }

    #[test]
    fn word_boundary() {
        let s: String = "X".repeat(22);
        let e = enc(&s);
        assert_eq!(e.words().len(), 2);
        assert_eq!(e.words()[1], 0b110);
        assert_eq!(e.words()[0] >> 63, 0);
    }

    #[test]
    fn fast_examples() {
        assert!(enc("X").anticommutes(&enc("Y")).unwrap());
        assert!(!enc("XX").anticommutes(&enc("YY")).unwrap());
        assert!(!enc("XI").anticommutes(&enc("IX")).unwrap());
        assert_eq!(
            enc("X").anticommutes(&enc("XY")),
            Err(PauliError::LengthMismatch(1, 2))
        );
    }

    #[test]
    fn complement_edges() {
        let set = PauliSet::from_strs(["X", "Y"]).unwrap();
        assert_eq!(set.complement_edge(0, 1), Ok(false));
        let set = PauliSet::from_strs(["XX", "YY"]).unwrap();
        assert_eq!(set.complement_edge(0, 1), Ok(true));
        let set = PauliSet::from_strs(["XI", "XI"]).unwrap();
        assert_eq!(set.complement_edge(0, 1), Ok(true));
        assert_eq!(set.complement_edge(1, 1), Err(PauliError::SameVertex(1)));
    }

    #[test]
    fn bad_inputs() {
        assert_eq!(
            PauliSet::from_strs(["XY", "XYZ"]),
            Err(PauliError::MixedLength {
                line: 2,
                expected: 2,
                found: 3
            })
        );
        assert_eq!(
            PauliString::parse("XQ", 4),
            Err(PauliError::BadSymbol {
                line: 4,
                symbol: 'Q'
            })
        );
        assert_eq!(PauliSet::new(vec![]), Err(PauliError::Empty));
    }

    #[test]
    fn char_loop_matches_examples() {
        assert!(anticommutes_chars(b"X", b"Y"));
        assert!(!anticommutes_chars(b"XX", b"YY"));
        assert!(!anticommutes_chars(b"XI", b"IX"));
    }

    fn pauli_string(len: core::ops::RangeInclusive<usize>) -> impl Strategy<Value = PauliString> {
        prop::collection::vec(0u8..4, len)
            .prop_map(|v| PauliString(v.into_iter().map(|c| Pauli::ALL[c as usize]).collect()))
    }

    fn pair(len: core::ops::RangeInclusive<usize>) -> impl Strategy<Value = (PauliString, PauliString)> {
        len.prop_flat_map(|n| (pauli_string(n..=n), pauli_string(n..=n)))
    }

    proptest! {
        #[test]
        fn encoding_round_trips(p in pauli_string(1..=64)) {
            let e = p.encode();
            prop_assert_eq!(e.decode(), p.clone());
            let used = p.num_qubits() % CODES_PER_WORD;
            if used != 0 {
                prop_assert_eq!(e.words().last().unwrap() >> (3 * used), 0);
            }
        }

        #[test]
        fn parity_is_symmetric((a, b) in pair(1..=64)) {
            let (ea, eb) = (a.encode(), b.encode());
            prop_assert_eq!(ea.anticommutes(&eb), eb.anticommutes(&ea));
        }

        #[test]
        fn identity_padding_is_neutral((a, b) in pair(1..=40), pad in 1usize..30) {
            let before = a.encode().anticommutes(&b.encode()).unwrap();
            let mut a2 = a.ops().to_vec();
            let mut b2 = b.ops().to_vec();
            a2.extend(core::iter::repeat_n(Pauli::I, pad));
            b2.extend(core::iter::repeat_n(Pauli::I, pad));
            let after = PauliString(a2).encode().anticommutes(&PauliString(b2).encode()).unwrap();
            prop_assert_eq!(before, after);
        }

        #[test]
        fn packed_matches_char_loop((a, b) in pair(1..=64)) {
            let sa = a.to_string();
            let sb = b.to_string();
            prop_assert_eq!(
                a.encode().anticommutes(&b.encode()).unwrap(),
                anticommutes_chars(sa.as_bytes(), sb.as_bytes())
            );
        }
    }
}
