use super::FinitePoset;

/// An order-isomorphism `f` from `p` onto `q` (`f[x]` is the image of `x`).
pub fn iso(p: &FinitePoset, q: &FinitePoset) -> Option<Vec<usize>> {
    let n = p.len();
    if n != q.len() || p.height() != q.height() {
        return None;
    }
    let sig = |poset: &FinitePoset| -> Vec<(usize, usize, usize)> {
        let ranks = poset.ranks();
        (0..poset.len())
            .map(|x| {
                (
                    poset.down_of(x).count_ones(..),
                    poset.up_of(x).count_ones(..),
                    ranks[x],
                )
            })
            .collect()
    };
    let (sp, sq) = (sig(p), sig(q));
    let mut a = sp.clone();
    let mut b = sq.clone();
    a.sort_unstable();
    b.sort_unstable();
    if a != b {
        return None;
    }
    let order = p.linear_extension();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if extend(p, q, &sp, &sq, &order, 0, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

#[allow(clippy::too_many_arguments)]
fn extend(
    p: &FinitePoset,
    q: &FinitePoset,
    sp: &[(usize, usize, usize)],
    sq: &[(usize, usize, usize)],
    order: &[usize],
    k: usize,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    if k == order.len() {
        return true;
    }
    let x = order[k];
    for y in 0..q.len() {
        if used[y] || sp[x] != sq[y] {
            continue;
        }
        let consistent = order[..k].iter().all(|&a| {
            let fa = map[a];
            p.leq(a, x) == q.leq(fa, y) && p.leq(x, a) == q.leq(y, fa)
        });
        if !consistent {
            continue;
        }
        map[x] = y;
        used[y] = true;
        if extend(p, q, sp, sq, order, k + 1, map, used) {
            return true;
        }
        used[y] = false;
        map[x] = usize::MAX;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chains_and_antichains() {
        let c = FinitePoset::chain(3);
        let relabeled = c.relabel(&[2, 0, 1]);
        let f = iso(&c, &relabeled).unwrap();
        for x in 0..3 {
            for y in 0..3 {
                assert_eq!(c.leq(x, y), relabeled.leq(f[x], f[y]));
            }
        }
        assert!(iso(&c, &FinitePoset::antichain(3)).is_none());
    }

    #[test]
    fn same_size_same_height_different_shape() {
        // V versus Λ.
        let v = FinitePoset::from_generating_pairs(3, &[(0, 1), (0, 2)]).unwrap();
        let l = FinitePoset::from_generating_pairs(3, &[(0, 2), (1, 2)]).unwrap();
        assert!(iso(&v, &l).is_none());
        assert!(iso(&v, &l.dual()).is_some());
    }
}
