//! Random origamis: combinatorial invariants recomputed here from the two
//! permutations, and invariance of everything under relabeling squares.

use proptest::prelude::*;
use sqtile::certify::{component_label, in_hyperelliptic_component, is_hyperelliptic, spin_parity};
use sqtile::linalg::charpoly;
use sqtile::{Direction, Error, Origami, Stratum};

fn perm(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<usize>>()).prop_shuffle()
}

fn pair(lo: usize, hi: usize) -> impl Strategy<Value = (Vec<usize>, Vec<usize>)> {
    (lo..=hi).prop_flat_map(|n| (perm(n), perm(n)))
}

fn inv(p: &[usize]) -> Vec<usize> {
    let mut q = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        q[x] = i;
    }
    q
}

fn cycle_lengths(p: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; p.len()];
    let mut out = Vec::new();
    for s in 0..p.len() {
        let mut len = 0;
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            x = p[x];
            len += 1;
        }
        if len > 0 {
            out.push(len);
        }
    }
    out
}

fn connected(h: &[usize], v: &[usize]) -> bool {
    let mut seen = vec![false; h.len()];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(x) = stack.pop() {
        for y in [h[x], v[x]] {
            if !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    seen.iter().all(|&b| b)
}

/// Zero orders from the commutator `h v h^-1 v^-1`: a vertex where `k + 1`
/// squares meet has cone angle `2 pi (k + 1)`.
fn orders(h: &[usize], v: &[usize]) -> Vec<usize> {
    let (hi, vi) = (inv(h), inv(v));
    let c: Vec<usize> = (0..h.len()).map(|x| h[v[hi[vi[x]]]]).collect();
    let mut o: Vec<usize> = cycle_lengths(&c).into_iter().filter(|&l| l > 1).map(|l| l - 1).collect();
    o.sort_unstable_by(|a, b| b.cmp(a));
    o
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn stratum_and_genus_from_the_commutator((h, v) in pair(1, 10)) {
        match Origami::new(h.clone(), v.clone()) {
            Ok(o) => {
                prop_assert!(connected(&h, &v));
                let want = orders(&h, &v);
                let total: usize = want.iter().sum();
                prop_assert_eq!(o.stratum(), Stratum::new(want.clone()));
                prop_assert_eq!(o.genus().unwrap(), total / 2 + 1);
                // Euler characteristic: vertices - 2n edges + n faces
                let vertices = want.len() + h.len() - want.iter().map(|k| k + 1).sum::<usize>();
                prop_assert_eq!(2 * o.genus().unwrap(), 2 + h.len() - vertices);
                let cs = o.curve_system();
                prop_assert_eq!(cs.n(), cycle_lengths(&h).len());
                prop_assert_eq!(cs.m(), cycle_lengths(&v).len());
                let total_x: i64 = cs.x.entries().iter().map(|e| i64::try_from(e).unwrap()).sum();
                prop_assert_eq!(total_x as usize, h.len());
            }
            Err(Error::NotConnected { .. }) => prop_assert!(!connected(&h, &v)),
            Err(e) => prop_assert!(false, "{}", e),
        }
    }

    #[test]
    fn cylinders_tile_the_surface((h, v) in pair(1, 10)) {
        prop_assume!(connected(&h, &v));
        let o = Origami::new(h, v).unwrap();
        let n = o.n_squares();
        let hd = o.cylinders(Direction::Horizontal).cylinders;
        let vd = o.cylinders(Direction::Vertical).cylinders;
        for cyls in [&hd, &vd] {
            prop_assert_eq!(cyls.iter().map(|c| c.circumference * c.height).sum::<usize>(), n);
            let mut all: Vec<usize> = cyls.iter().flat_map(|c| c.squares.clone()).collect();
            all.sort_unstable();
            prop_assert_eq!(all, (0..n).collect::<Vec<_>>());
        }
        // every crossing of two core curves is a height_i x width_j block
        let x = o.cylinder_intersections().unwrap();
        let mut total = 0;
        for (i, hc) in hd.iter().enumerate() {
            for (j, vc) in vd.iter().enumerate() {
                total += usize::try_from(x.get(i, j)).unwrap() * hc.height * vc.height;
            }
        }
        prop_assert_eq!(total, n);
    }

    #[test]
    fn invariants_survive_relabeling((h, v) in pair(3, 10), seed in perm(10)) {
        prop_assume!(connected(&h, &v));
        let o = Origami::new(h.clone(), v).unwrap();
        let n = h.len();
        let p: Vec<usize> = seed.into_iter().filter(|&x| x < n).collect();
        let r = o.relabel(&p).unwrap();
        prop_assert_eq!(r.n_squares(), n);
        prop_assert_eq!(r.stratum(), o.stratum());
        prop_assert_eq!(r.genus(), o.genus());
        let cp = |o: &Origami| charpoly(o.curve_system().xxt().as_matrix());
        prop_assert_eq!(cp(&r), cp(&o));
        if o.genus().unwrap() >= 2 {
            prop_assert_eq!(is_hyperelliptic(&r), is_hyperelliptic(&o));
            prop_assert_eq!(spin_parity(&r), spin_parity(&o));
            prop_assert_eq!(component_label(&r), component_label(&o));
        }
        let back: Origami = serde_json::from_str(&r.to_json()).unwrap();
        prop_assert_eq!(back, r);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 150, max_global_rejects: 200_000, ..ProptestConfig::default() })]

    /// In genus three the hyperelliptic components of `H(4)` and `H(2,2)` are
    /// exactly the ones with even parity.
    #[test]
    fn genus_three_parity_separates_components((h, v) in pair(5, 11)) {
        prop_assume!(connected(&h, &v));
        let o = Origami::new(h, v).unwrap();
        let s = o.stratum();
        prop_assume!(s == Stratum::new(vec![4]) || s == Stratum::new(vec![2, 2]));
        let hyp = in_hyperelliptic_component(&o).unwrap();
        prop_assert_eq!(spin_parity(&o).unwrap() == 0, hyp);
    }

    /// Genus two: every surface of `H(2)` is hyperelliptic with odd parity.
    #[test]
    fn genus_two_is_hyperelliptic((h, v) in pair(3, 9)) {
        prop_assume!(connected(&h, &v));
        let o = Origami::new(h, v).unwrap();
        prop_assume!(o.genus().unwrap() == 2);
        prop_assert!(is_hyperelliptic(&o).unwrap().0);
        if o.stratum() == Stratum::new(vec![2]) {
            prop_assert_eq!(spin_parity(&o).unwrap(), 1);
        } else {
            prop_assert_eq!(spin_parity(&o), Err(Error::SpinUndefined));
        }
    }
}

#[test]
fn rejects_bad_input() {
    assert!(matches!(Origami::new(vec![0, 0], vec![0, 1]), Err(Error::NotAPermutation(_))));
    assert!(matches!(Origami::new(vec![0, 1], vec![0]), Err(Error::NotAPermutation(_))));
    assert!(matches!(Origami::new(vec![0, 1], vec![0, 1]), Err(Error::NotConnected { orbit: 1, total: 2 })));
    assert!(serde_json::from_str::<Origami>(r#"{"n":3,"sigma_h":[1,0],"sigma_v":[0,1]}"#).is_err());
    let t = Origami::torus(3);
    assert_eq!((t.genus().unwrap(), t.stratum().orders().len()), (1, 0));
    assert_eq!(is_hyperelliptic(&t), Err(Error::NoConePoint));
}
