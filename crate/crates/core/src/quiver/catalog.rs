//! Named quivers: Dynkin and affine orientations, the exceptional quivers of
//! finite mutation type, and a few small test quivers.

use super::Quiver;

fn named(labels: &[&str], arrows: &[(&str, &str, u32)]) -> Quiver {
    let idx = |s: &str| labels.iter().position(|l| *l == s).unwrap_or_else(|| panic!("unknown vertex {s}"));
    let arrows: Vec<_> = arrows.iter().map(|&(a, b, m)| (idx(a), idx(b), m)).collect();
    Quiver::from_arrows(labels.len(), &arrows)
        .expect("catalog quiver")
        .with_labels(labels.iter().map(|s| s.to_string()).collect())
}

/// Linear `A_n`: `1 -> 2 -> ... -> n`.
pub fn a(n: usize) -> Quiver {
    assert!(n >= 1);
    let arrows: Vec<_> = (1..n).map(|i| (i - 1, i, 1)).collect();
    Quiver::from_arrows(n, &arrows).unwrap()
}

/// `D_n` (`n >= 4`): a path `1 -> ... -> n-2` with two extra arrows `n-1 -> n-2`, `n -> n-2`.
pub fn d(n: usize) -> Quiver {
    assert!(n >= 4);
    let mut arrows: Vec<_> = (1..n - 2).map(|i| (i - 1, i, 1)).collect();
    arrows.push((n - 2, n - 3, 1));
    arrows.push((n - 1, n - 3, 1));
    Quiver::from_arrows(n, &arrows).unwrap()
}

fn e_arrows(n: usize) -> Vec<(&'static str, &'static str, u32)> {
    let mut arrows = vec![("l2", "l1", 1), ("l1", "0", 1), ("u1", "0", 1), ("r1", "0", 1)];
    let chain = [("r2", "r1"), ("r3", "r2"), ("r4", "r3"), ("r5", "r4")];
    arrows.extend(chain[..n - 5].iter().map(|&(s, t)| (s, t, 1)));
    arrows
}

fn e_labels(n: usize) -> Vec<&'static str> {
    let all = ["0", "l1", "l2", "u1", "r1", "r2", "r3", "r4", "r5"];
    all[..n].to_vec()
}

/// `E_6`, `E_7`, `E_8` in the orientation of the exceptional table.
pub fn e(n: usize) -> Quiver {
    assert!((6..=8).contains(&n));
    named(&e_labels(n), &e_arrows(n))
}

/// Affine `E_n^(1)`: `E_6` plus `u2 -> u1`, `E_7` plus `l3 -> l2`, `E_8` plus `r5 -> r4`.
pub fn e_affine(n: usize) -> Quiver {
    match n {
        6 => {
            let mut labels = e_labels(6);
            labels.push("u2");
            let mut arrows = e_arrows(6);
            arrows.push(("u2", "u1", 1));
            named(&labels, &arrows)
        }
        7 => {
            let mut labels = e_labels(7);
            labels.push("l3");
            let mut arrows = e_arrows(7);
            arrows.push(("l3", "l2", 1));
            named(&labels, &arrows)
        }
        8 => named(&e_labels(9), &e_arrows(9)),
        _ => panic!("E_n^(1) needs n in 6..=8"),
    }
}

/// Affine `A` on a cycle of `p + q` vertices: `p` arrows clockwise, `q` anticlockwise.
pub fn a_affine(p: usize, q: usize) -> Quiver {
    assert!(p >= 1 && q >= 1);
    let n = p + q;
    if n == 2 {
        return kronecker(2);
    }
    let arrows: Vec<_> = (0..n).map(|i| if i < p { (i, (i + 1) % n, 1) } else { ((i + 1) % n, i, 1) }).collect();
    Quiver::from_arrows(n, &arrows).unwrap()
}

/// Affine `D_n` (`n >= 4`, `n + 1` vertices), all arrows pointing along the spine.
pub fn d_affine(n: usize) -> Quiver {
    assert!(n >= 4);
    // leaves 0, 1 -> spine 2 .. n-2 -> leaves n-1, n
    let mut arrows = vec![(0, 2, 1), (1, 2, 1)];
    arrows.extend((2..n - 2).map(|i| (i, i + 1, 1)));
    arrows.push((n - 2, n - 1, 1));
    arrows.push((n - 2, n, 1));
    Quiver::from_arrows(n + 1, &arrows).unwrap()
}

/// Generalized Kronecker quiver with `m` arrows `1 -> 2`.
pub fn kronecker(m: u32) -> Quiver {
    Quiver::from_arrows(2, &[(0, 1, m)]).unwrap()
}

/// Oriented 3-cycle `1 -> 2 -> 3 -> 1`.
pub fn three_cycle() -> Quiver {
    Quiver::from_arrows(3, &[(0, 1, 1), (1, 2, 1), (2, 0, 1)]).unwrap()
}

pub fn x6() -> Quiver {
    named(
        &["0", "l", "lu", "r", "ru", "d"],
        &[("0", "l", 1), ("lu", "0", 1), ("0", "ru", 1), ("r", "0", 1), ("d", "0", 1), ("l", "lu", 2), ("ru", "r", 2)],
    )
}

pub fn x7() -> Quiver {
    named(
        &["0", "l", "lu", "r", "ru", "dl", "dr"],
        &[
            ("0", "l", 1),
            ("lu", "0", 1),
            ("0", "ru", 1),
            ("r", "0", 1),
            ("0", "dr", 1),
            ("dl", "0", 1),
            ("l", "lu", 2),
            ("ru", "r", 2),
            ("dr", "dl", 2),
        ],
    )
}

/// Elliptic `E_n^(1,1)` for `n` in `6..=8`.
pub fn e_elliptic(n: usize) -> Quiver {
    let core = [("u", "l1", 1), ("l1", "d", 1), ("u", "r1", 1), ("r1", "d", 1), ("d", "u", 2)];
    match n {
        6 => {
            let mut arrows = core.to_vec();
            arrows.extend([("l2", "l1", 1), ("r2", "r1", 1), ("r4", "r3", 1), ("u", "r3", 1), ("r3", "d", 1)]);
            named(&["l1", "l2", "u", "d", "r1", "r2", "r3", "r4"], &arrows)
        }
        7 => {
            let mut arrows = core.to_vec();
            arrows.extend([
                ("l3", "l2", 1),
                ("l2", "l1", 1),
                ("r3", "r2", 1),
                ("r4", "r3", 1),
                ("u", "r2", 1),
                ("r2", "d", 1),
            ]);
            named(&["l1", "l2", "l3", "u", "d", "r1", "r2", "r3", "r4"], &arrows)
        }
        8 => {
            let mut arrows = core.to_vec();
            arrows.extend([
                ("l2", "l1", 1),
                ("r3", "r2", 1),
                ("r4", "r3", 1),
                ("u", "r2", 1),
                ("r2", "d", 1),
                ("r5", "r4", 1),
                ("r6", "r5", 1),
            ]);
            named(&["l1", "l2", "u", "d", "r1", "r2", "r3", "r4", "r5", "r6"], &arrows)
        }
        _ => panic!("E_n^(1,1) needs n in 6..=8"),
    }
}

/// `T_1`: double arrows `1 => 2 => 3 => 1`.
pub fn t1() -> Quiver {
    Quiver::from_arrows(3, &[(0, 1, 2), (1, 2, 2), (2, 0, 2)]).unwrap()
}

/// `T_2`: `1 => 2`, `2 -> 3`, `2 -> 4`, `3 -> 1`, `3 -> 4`, `4 -> 1`.
pub fn t2() -> Quiver {
    Quiver::from_arrows(4, &[(0, 1, 2), (1, 2, 1), (1, 3, 1), (2, 0, 1), (2, 3, 1), (3, 0, 1)]).unwrap()
}

/// Looks up a catalogue quiver by name, e.g. `A4`, `D5`, `E6`, `E7^(1)`,
/// `E8^(1,1)`, `X6`, `K3`, `T2`, `cycle3`.
pub fn by_name(name: &str) -> Option<Quiver> {
    let name = name.trim();
    let (base, suffix) = match name.find('^') {
        Some(i) => (&name[..i], &name[i..]),
        None => (name, ""),
    };
    let letter = base.chars().next()?;
    let num: Option<usize> = base[letter.len_utf8()..].parse().ok();
    let q = match (letter, num, suffix) {
        (_, _, _) if name == "cycle3" => three_cycle(),
        ('A', Some(n), "") if n >= 1 => a(n),
        ('A', Some(n), "^(1)") if n >= 1 => a_affine(n.div_ceil(2), n + 1 - n.div_ceil(2)),
        ('D', Some(n), "") if n >= 4 => d(n),
        ('D', Some(n), "^(1)") if n >= 4 => d_affine(n),
        ('E', Some(n), "") if (6..=8).contains(&n) => e(n),
        ('E', Some(n), "^(1)") if (6..=8).contains(&n) => e_affine(n),
        ('E', Some(n), "^(1,1)") if (6..=8).contains(&n) => e_elliptic(n),
        ('X', Some(6), "") => x6(),
        ('X', Some(7), "") => x7(),
        ('K', Some(m), "") if m >= 1 => kronecker(m as u32),
        ('T', Some(1), "") => t1(),
        ('T', Some(2), "") => t2(),
        _ => return None,
    };
    Some(q)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranks() {
        assert_eq!(e(6).n(), 6);
        assert_eq!(e_affine(6).n(), 7);
        assert_eq!(e_affine(8).n(), 9);
        assert_eq!(e_elliptic(6).n(), 8);
        assert_eq!(e_elliptic(7).n(), 9);
        assert_eq!(e_elliptic(8).n(), 10);
        assert_eq!(x6().n(), 6);
        assert_eq!(x7().n(), 7);
        assert_eq!(d_affine(4).n(), 5);
        assert_eq!(a_affine(2, 1).n(), 3);
    }

    #[test]
    fn x6_doubled_pair_restricts_to_kronecker() {
        let q = x6();
        // vertices l, lu
        let k = q.restrict(&[1, 2]).unwrap();
        assert_eq!(k, kronecker(2));
    }

    #[test]
    fn lookup() {
        assert_eq!(by_name("E6^(1,1)").unwrap(), e_elliptic(6));
        assert_eq!(by_name("A3").unwrap(), a(3));
        assert_eq!(by_name("A1^(1)").unwrap(), kronecker(2));
        assert!(by_name("E9").is_none());
        assert!(by_name("").is_none());
    }

    #[test]
    fn catalogue_quivers_are_connected() {
        for q in [e(8), e_affine(7), e_elliptic(8), x7(), d_affine(6), t2(), a_affine(3, 2)] {
            assert!(q.is_connected());
        }
    }
}
