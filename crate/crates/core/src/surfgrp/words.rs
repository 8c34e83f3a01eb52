//! Words in a free group: letters are signed 1-based generator indices.

pub type Word = Vec<i32>;

pub fn free_reduce(w: &[i32]) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for &x in w {
        if out.last() == Some(&-x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    out
}

pub fn inverse(w: &[i32]) -> Word {
    w.iter().rev().map(|&x| -x).collect()
}

pub fn concat(parts: &[&[i32]]) -> Word {
    let mut out = Vec::new();
    for p in parts {
        out.extend_from_slice(p);
    }
    free_reduce(&out)
}

pub fn power(w: &[i32], e: i32) -> Word {
    let base = if e < 0 { inverse(w) } else { w.to_vec() };
    let mut out = Vec::new();
    for _ in 0..e.unsigned_abs() {
        out.extend_from_slice(&base);
    }
    free_reduce(&out)
}

pub fn commutator(a: &[i32], b: &[i32]) -> Word {
    concat(&[a, b, &inverse(a), &inverse(b)])
}

/// Replaces each letter `x_i^{±1}` by `images[i-1]^{±1}`.
pub fn substitute(w: &[i32], images: &[Word]) -> Word {
    let mut out = Vec::new();
    for &x in w {
        let img = &images[x.unsigned_abs() as usize - 1];
        if x > 0 {
            out.extend_from_slice(img);
        } else {
            out.extend(inverse(img));
        }
    }
    free_reduce(&out)
}

/// Exponent sum of each of the `n` generators.
pub fn abelianize(w: &[i32], n: usize) -> Vec<i64> {
    let mut v = vec![0i64; n];
    for &x in w {
        v[x.unsigned_abs() as usize - 1] += x.signum() as i64;
    }
    v
}

/// Writes a reduced word as `c · core · c⁻¹` with `core` cyclically reduced.
pub fn cyclic_core(w: &[i32]) -> (Word, Word) {
    let w = free_reduce(w);
    let mut i = 0;
    while i < w.len() / 2 && w[i] == -w[w.len() - 1 - i] {
        i += 1;
    }
    (w[..i].to_vec(), w[i..w.len() - i].to_vec())
}

/// Finds `c` with `u = c·v·c⁻¹` in the free group, if `u` and `v` are conjugate.
pub fn conjugator(u: &[i32], v: &[i32]) -> Option<Word> {
    let (a, u0) = cyclic_core(u);
    let (b, v0) = cyclic_core(v);
    if u0.len() != v0.len() {
        return None;
    }
    if u0.is_empty() {
        return Some(Vec::new());
    }
    let n = v0.len();
    // u0 = rot_k(v0) = s·p where v0 = p·s, so u0 = p⁻¹·v0·p
    for k in 0..n {
        if (0..n).all(|i| u0[i] == v0[(i + k) % n]) {
            let p = &v0[..k];
            return Some(concat(&[&a, &inverse(p), &inverse(&b)]));
        }
    }
    None
}

pub fn format_word(w: &[i32], names: &[String]) -> String {
    if w.is_empty() {
        return "1".into();
    }
    w.iter()
        .map(|&x| {
            let n = &names[x.unsigned_abs() as usize - 1];
            if x > 0 {
                n.clone()
            } else {
                format!("{n}^-1")
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conjugator_is_verified() {
        let r = commutator(&[1], &[2]);
        let c = vec![2, 1, 1, -2];
        let u = concat(&[&c, &r, &inverse(&c)]);
        let found = conjugator(&u, &r).unwrap();
        assert_eq!(concat(&[&found, &r, &inverse(&found)]), u);
        assert!(conjugator(&u, &inverse(&r)).is_none());
        // rotations of a cyclically reduced word
        let rot = vec![2, -1, -2, 1];
        let c = conjugator(&rot, &r).unwrap();
        assert_eq!(concat(&[&c, &r, &inverse(&c)]), rot);
    }

    #[test]
    fn substitution() {
        // a -> a a b, b -> a b
        let imgs = vec![vec![1, 1, 2], vec![1, 2]];
        assert_eq!(substitute(&[1, -2], &imgs), vec![1]);
    }
}
