/// Unary word of a pair: `a^p b^q` for `p ≥ 0`, `a^|p| c^q` for `p < 0`,
/// and `a^p` alone when `q` is absent.
pub fn encode_unary(p: i64, q: Option<u64>) -> String {
    let mut out = "a".repeat(p.unsigned_abs() as usize);
    if let Some(q) = q {
        out.push_str(&(if p < 0 { "c" } else { "b" }).repeat(q as usize));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn examples() {
        assert_eq!(encode_unary(2, Some(3)), "aabbb");
        assert_eq!(encode_unary(0, Some(0)), "");
        assert_eq!(encode_unary(-1, Some(2)), "acc");
        assert_eq!(encode_unary(4, None), "aaaa");
    }

    /// Reads a word back; `None` if it is not an encoding.
    fn decode(w: &str) -> Option<(i64, u64)> {
        let a = w.chars().take_while(|&c| c == 'a').count();
        let rest = &w[a..];
        let q = rest.len() as u64;
        match rest.chars().next() {
            None => Some((a as i64, 0)),
            Some('b') if rest.chars().all(|c| c == 'b') => Some((a as i64, q)),
            Some('c') if rest.chars().all(|c| c == 'c') => Some((-(a as i64), q)),
            _ => None,
        }
    }

    proptest! {
        #[test]
        fn injective_off_the_axis(p1 in -30i64..30, q1 in 0u64..30, p2 in -30i64..30, q2 in 0u64..30) {
            let (w1, w2) = (encode_unary(p1, Some(q1)), encode_unary(p2, Some(q2)));
            // with no second letter the sign of p is lost
            let same_axis_point = q1 == 0 && q2 == 0 && p1.abs() == p2.abs();
            prop_assert_eq!(w1 == w2, (p1, q1) == (p2, q2) || same_axis_point);
            let (p, q) = decode(&w1).unwrap();
            prop_assert_eq!(q, q1);
            prop_assert_eq!(p, if q1 == 0 { p1.abs() } else { p1 });
        }
    }
}
