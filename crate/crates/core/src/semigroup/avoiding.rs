//! Ranking of the words avoiding every coding word.
//!
//! Such a word never has an `a`, then `b`s, then an `a` again, so it is
//! `b^p a^q b^r`. With `q = 0` that is just `b^ℓ`; otherwise `(p, q, r)` is
//! determined by the word. Length `ℓ` therefore has `1 + ℓ(ℓ+1)/2` of them.
//!
//! In lexicographic order (`a < b`) within one length, words group by `p`
//! ascending, then `q` descending, with `b^ℓ` last.

/// Number of avoiding words of length `len ≥ 1`.
pub fn avoiding_count(len: u64) -> u128 {
    let l = u128::from(len);
    1 + l * (l + 1) / 2
}

/// Number of avoiding words shorter than `len`.
fn shorter_than(len: u64) -> u128 {
    let l = u128::from(len);
    if l == 0 {
        return 0;
    }
    (l - 1) + (l - 1) * l * (l + 1) / 6
}

/// Length-lex rank among avoiding words. The caller guarantees `w` avoids.
pub fn avoiding_rank(w: &[u8]) -> u64 {
    let len = w.len() as u64;
    let p = w.iter().take_while(|&&c| c == b'b').count() as u64;
    let q = w[p as usize..].iter().take_while(|&&c| c == b'a').count() as u64;
    let within = if q == 0 {
        u128::from(len) * u128::from(len + 1) / 2
    } else {
        let (l, p, q) = (u128::from(len), u128::from(p), u128::from(q));
        p * l - p * (p.saturating_sub(1)) / 2 + (l - p - q)
    };
    u64::try_from(shorter_than(len) + within).expect("avoiding rank overflowed u64")
}

pub fn avoiding_unrank(k: u64) -> Vec<u8> {
    let mut k = u128::from(k);
    let mut len = 1u64;
    while k >= avoiding_count(len) {
        k -= avoiding_count(len);
        len += 1;
    }
    let l = len as usize;
    let mut p = 0usize;
    while p < l && k >= (l - p) as u128 {
        k -= (l - p) as u128;
        p += 1;
    }
    if p == l {
        return vec![b'b'; l];
    }
    let q = (l - p) - k as usize;
    let mut out = vec![b'b'; p];
    out.resize(p + q, b'a');
    out.resize(l, b'b');
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::{classify, Stratum};
    use crate::word::Word;

    #[test]
    fn ranks_match_length_lex_enumeration() {
        let avoiding: Vec<Word> = Word::up_to_length(14).filter(|w| classify(w) == Stratum::Avoiding).collect();
        for (k, w) in avoiding.iter().enumerate() {
            assert_eq!(avoiding_rank(w.as_bytes()), k as u64, "{w}");
            assert_eq!(avoiding_unrank(k as u64), w.as_bytes());
        }
        for len in 1..=14u64 {
            let n = avoiding.iter().filter(|w| w.len() as u64 == len).count() as u128;
            assert_eq!(n, avoiding_count(len));
        }
    }

    #[test]
    fn first_words() {
        let first: Vec<String> = (0..8).map(|k| String::from_utf8(avoiding_unrank(k)).unwrap()).collect();
        assert_eq!(first, ["a", "b", "aa", "ab", "ba", "bb", "aaa", "aab"]);
    }

    #[test]
    fn long_words_round_trip() {
        for k in [10_000u64, 123_456_789, 1 << 40] {
            assert_eq!(avoiding_rank(&avoiding_unrank(k)), k);
        }
    }
}
