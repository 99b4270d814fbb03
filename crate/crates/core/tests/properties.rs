use forge::braid::{artin_act, braid_equal, parse_braid, BraidWord, FreeWord, Letter};
use forge::catalog::{build_elliptic, build_full_chain_pencil, build_x, build_z};
use forge::cover::BaseLedger;
use forge::invariants::{blow_down, euler_characteristic, h1_of_total_space, meyer_cocycle, signature, spin_test, AbelianGroup, InvariantVector};
use forge::mcg::{cyclic_rotate, hurwitz_move, Direction, Factorization};
use forge::symplectic::SpMatrix;
use forge::Int;
use proptest::prelude::*;

fn sp_strategy(genus: usize) -> impl Strategy<Value = SpMatrix<Int>> {
    prop::collection::vec((prop::collection::vec(-2i64..=2, 2 * genus), prop::bool::ANY), 1..=3).prop_map(move |parts| {
        parts.iter().fold(SpMatrix::identity(genus), |m, (v, pos)| m.mul(&SpMatrix::transvection(v, if *pos { 1 } else { -1 }).unwrap()).unwrap())
    })
}

fn triple(genus: usize) -> impl Strategy<Value = (SpMatrix<Int>, SpMatrix<Int>, SpMatrix<Int>)> {
    (sp_strategy(genus), sp_strategy(genus), sp_strategy(genus))
}

fn braid_strategy() -> impl Strategy<Value = BraidWord> {
    (2usize..=8).prop_flat_map(|n| {
        prop::collection::vec((1..n, prop::bool::ANY), 0..=50)
            .prop_map(move |ls| BraidWord::new(n, ls.into_iter().map(|(i, p)| if p { Letter::pos(i) } else { Letter::neg(i) }).collect()).unwrap())
    })
}

fn fingerprint(f: &Factorization) -> (i64, i64, AbelianGroup, Result<bool, String>) {
    (
        euler_characteristic(f).unwrap(),
        signature(f).unwrap(),
        h1_of_total_space(f).unwrap(),
        spin_test(f).map_err(|e| e.to_string()),
    )
}

fn apply_moves(f: &Factorization, moves: &[(bool, usize, bool)]) -> Factorization {
    let mut cur = f.clone();
    for &(rotate, p, left) in moves {
        cur = if rotate {
            cyclic_rotate(&cur, p as i64)
        } else {
            let pos = p % (cur.mu() - 1);
            hurwitz_move(&cur, pos, if left { Direction::Left } else { Direction::Right }).unwrap()
        };
    }
    cur
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn meyer_cocycle_identity_genus_one((a, b, c) in triple(1)) {
        let ab = a.mul(&b).unwrap();
        let bc = b.mul(&c).unwrap();
        let lhs = meyer_cocycle(&a, &b).unwrap() + meyer_cocycle(&ab, &c).unwrap();
        let rhs = meyer_cocycle(&a, &bc).unwrap() + meyer_cocycle(&b, &c).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn meyer_cocycle_identity_genus_two((a, b, c) in triple(2)) {
        let ab = a.mul(&b).unwrap();
        let bc = b.mul(&c).unwrap();
        let lhs = meyer_cocycle(&a, &b).unwrap() + meyer_cocycle(&ab, &c).unwrap();
        let rhs = meyer_cocycle(&a, &bc).unwrap() + meyer_cocycle(&b, &c).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn meyer_vanishing_cases(a in sp_strategy(2)) {
        prop_assert_eq!(meyer_cocycle(&SpMatrix::identity(2), &a).unwrap(), 0);
        prop_assert_eq!(meyer_cocycle(&a, &a.inverse().unwrap()).unwrap(), 0);
    }

    #[test]
    fn transvections_are_symplectic(v in prop::collection::vec(-5i64..=5, 6), k in -3i64..=3) {
        let t = SpMatrix::transvection(&v, k).unwrap();
        prop_assert!(t.is_symplectic().unwrap());
        prop_assert!(t.mul(&SpMatrix::transvection(&v, -k).unwrap()).unwrap().is_identity());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn artin_action_respects_braid_relations(w in braid_strategy(), cut in 0usize..=50, far in prop::bool::ANY) {
        let n = w.strands();
        let cut = cut.min(w.len());
        let (head, tail) = w.letters().split_at(cut);
        let rel: Vec<i64> = if n >= 3 && !far {
            let i = (cut % (n - 2)) as i64 + 1;
            vec![i, i + 1, i, -(i + 1), -i, -(i + 1)]
        } else if n >= 4 {
            vec![1, 3, -1, -3]
        } else {
            vec![1, -1]
        };
        let padded = BraidWord::new(n, head.to_vec()).unwrap()
            .concat(&BraidWord::from_signed(n, &rel).unwrap()).unwrap()
            .concat(&BraidWord::new(n, tail.to_vec()).unwrap()).unwrap();
        prop_assert!(braid_equal(&w, &padded).unwrap());
        let x = FreeWord::generator(n, 1 + cut % n).unwrap();
        let there = artin_act(&w, &x).unwrap();
        prop_assert_eq!(artin_act(&w.inverse(), &there).unwrap(), x);
    }

    #[test]
    fn braid_text_round_trip(w in braid_strategy()) {
        prop_assert_eq!(parse_braid(w.strands(), &w.to_string()).unwrap(), w);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn invariants_survive_moves(moves in prop::collection::vec((prop::bool::weighted(0.2), 0usize..400, prop::bool::ANY), 1..=40), which in 0usize..4) {
        let f = match which {
            0 => build_elliptic(2).unwrap(),
            1 => build_full_chain_pencil(2).unwrap(),
            2 => build_x(3, 0, false).unwrap(),
            _ => build_x(3, 1, true).unwrap(),
        };
        let moved = apply_moves(&f, &moves);
        prop_assert!(moved.sp_product().unwrap().is_identity());
        prop_assert_eq!(fingerprint(&moved), fingerprint(&f));
    }

    #[test]
    fn hurwitz_moves_invert(p in 0usize..50) {
        let f = build_z(3, true).unwrap();
        let p = p % (f.mu() - 1);
        let there = hurwitz_move(&f, p, Direction::Right).unwrap();
        let back = hurwitz_move(&there, p, Direction::Left).unwrap();
        let classes = |g: &Factorization| g.twists.iter().map(|t| t.curve.h1.clone()).collect::<Vec<_>>();
        prop_assert_eq!(classes(&back), classes(&f));
    }

    #[test]
    fn rotation_composes(a in -200i64..200, b in -200i64..200) {
        let f = build_elliptic(1).unwrap();
        prop_assert_eq!(cyclic_rotate(&cyclic_rotate(&f, a), b), cyclic_rotate(&f, a + b));
    }

    #[test]
    fn blow_down_round_trip(e in -50i64..200, s in -100i64..100, k in 0i64..20) {
        let v = InvariantVector { euler: e, signature: s, h1: AbelianGroup(vec![]), spin: false, base_points: 0 };
        let up = InvariantVector { euler: e + k, signature: s - k, ..v.clone() };
        prop_assert_eq!(blow_down(&up, k).unwrap(), v);
    }

    #[test]
    fn slides_preserve_lattice(f1 in -4i64..4, f2 in -4i64..4, f3 in -4i64..4, l in -2i64..2, sign in prop::bool::ANY) {
        let base = BaseLedger::new(&[(1, f1), (2, f2), (3, f3)], &[(1, 2, l), (2, 3, 1)]).unwrap().with_branch(&[(1, 2), (2, -4)]).unwrap();
        let s = base.handle_slide(1, 2, if sign { 1 } else { -1 }).unwrap();
        prop_assert_eq!(s.determinant().unwrap(), base.determinant().unwrap());
        prop_assert_eq!(s.signature().unwrap(), base.signature().unwrap());
        prop_assert_eq!(s.branch_square().unwrap(), base.branch_square().unwrap());
    }
}

#[test]
fn catalog_fibrations_satisfy_parity_and_bound() {
    let mut fs = vec![build_elliptic(1).unwrap(), build_elliptic(2).unwrap()];
    for g in 3..=5 {
        fs.push(build_z(g, true).unwrap());
        fs.push(build_x(g, 0, true).unwrap());
        fs.push(build_x(g, 1, true).unwrap());
    }
    for f in &fs {
        let e = euler_characteristic(f).unwrap();
        let s = signature(f).unwrap();
        assert_eq!((e + s).rem_euclid(2), 0, "{f}");
        assert!(s.abs() <= e - 2);
        for t in &f.twists {
            assert!(SpMatrix::transvection(&t.curve.h1, 1).unwrap().is_symplectic().unwrap());
        }
        let v = InvariantVector::of(f).unwrap();
        if v.spin {
            assert_eq!(v.signature.rem_euclid(16), 0);
        }
    }
}
