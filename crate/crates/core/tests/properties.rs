use expsel::*;
use proptest::prelude::*;

fn n(v: u64) -> Nat {
    Nat::from(v)
}

#[test]
fn inth_root_brackets_small_grid() {
    for k in 1..=10u32 {
        for v in 0..=100_000u64 {
            let (r, exact) = inth_root(&n(v), k).unwrap();
            let r = r.to_u64().unwrap();
            let lo = (r as u128).pow(k);
            let hi = (r as u128 + 1).pow(k);
            assert!(lo <= v as u128 && (v as u128) < hi, "n={v} k={k} r={r}");
            assert_eq!(exact, lo == v as u128);
        }
    }
}

#[test]
fn two_adic_split_small_grid() {
    for v in 1..=100_000u64 {
        let (k, odd) = two_adic_split(&n(v)).unwrap();
        let odd = odd.to_u64().unwrap();
        assert_eq!(odd << k, v);
        assert_eq!(odd % 2, 1);
    }
}

#[test]
fn as_pow2_inverts_ipow() {
    for t in 0..=256u64 {
        assert_eq!(as_pow2(&ipow(&n(2), t).unwrap()), Some(t));
    }
}

#[test]
fn certificate_selectivity() {
    let pool = [2u64, 3, 5, 7];
    let qs = primes_up_to(60).unwrap();
    for mask in 0..16u32 {
        let set = PrimeSet::new(
            pool.iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &p)| p),
        )
        .unwrap();
        let w = make_witness(&set).unwrap();
        for &q in &qs {
            let rep = pow2_representable(w.t, q).unwrap().is_representable();
            assert_eq!(rep, set.contains(q), "P={set} q={q}");
        }
    }
}

#[test]
fn natural_k_matches_direct_scan() {
    let grid: Vec<u64> = vec![1, 2, 3, 5, 7, 10, 31, 100, 999, 1000];
    for &a in &grid {
        for &b in &grid {
            for c in (2..=1000u64).step_by(7).chain([4, 9, 13, 16, 32, 1000]) {
                if a == 1 && b == 1 && c == 2 {
                    continue;
                }
                let direct: Vec<u64> = (1..=64u64)
                    .filter(|&k| &ipow(&n(a), k).unwrap() + &ipow(&n(b), k).unwrap() == n(c))
                    .collect();
                assert_eq!(
                    enumerate_natural_k(&n(a), &n(b), &n(c), 64).unwrap(),
                    direct,
                    "{a} {b} {c}"
                );
            }
        }
    }
}

#[test]
fn natural_k_finds_planted_solutions() {
    for a in 1..=12u64 {
        for b in 1..=12u64 {
            for k in 1..=8u64 {
                if a == 1 && b == 1 {
                    continue;
                }
                let c = &ipow(&n(a), k).unwrap() + &ipow(&n(b), k).unwrap();
                assert_eq!(enumerate_natural_k(&n(a), &n(b), &c, 1000).unwrap(), vec![k]);
            }
        }
    }
}

proptest! {
    #[test]
    fn ipow_adds_exponents(b in 0u64..=50, e1 in 0u64..=32, e2 in 0u64..=32) {
        let lhs = ipow(&n(b), e1 + e2).unwrap();
        let rhs = &ipow(&n(b), e1).unwrap() * &ipow(&n(b), e2).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn inth_root_of_exact_powers(base in 2u64..u64::MAX, k in 1u32..=12) {
        let p = ipow(&n(base), u64::from(k)).unwrap();
        prop_assert_eq!(inth_root(&p, k).unwrap(), (n(base), true));
        let (r, exact) = inth_root(&(&p - &n(1)), k).unwrap();
        prop_assert_eq!(r, n(base - 1));
        prop_assert_eq!(exact, k == 1);
    }

    #[test]
    fn planted_representation_is_found(a in 1u64..2000, d in 0u64..2000, p in 1u32..=6) {
        let b = a + d;
        let target = &ipow(&n(a), u64::from(p)).unwrap() + &ipow(&n(b), u64::from(p)).unwrap();
        let reps = represent_all(&target, p, DEFAULT_SEARCH_CAP).unwrap();
        prop_assert!(reps.iter().any(|r| r.a == n(a) && r.b == n(b)));
        for w in reps.windows(2) {
            prop_assert!(w[0].a < w[1].a);
        }
        for r in &reps {
            prop_assert!(r.a <= r.b);
            prop_assert!(verify_representation(r));
        }
    }

    #[test]
    fn solver_symmetry(a in 1.01f64..5.0, b in 1.01f64..5.0, k in -10.0f64..10.0) {
        let c = a.powf(k) + b.powf(k);
        let tol = 1e-12;
        let x = solve_real_k(a, b, c, tol, 200).unwrap();
        let y = solve_real_k(b, a, c, tol, 200).unwrap();
        prop_assert!((x.k - y.k).abs() <= tol);
        prop_assert!(x.bracket.0 <= x.k && x.k <= x.bracket.1);
        prop_assert!(x.bracket.1 - x.bracket.0 <= tol);
    }

    #[test]
    fn solver_reciprocal_bases(a in 1.01f64..5.0, b in 1.01f64..5.0, c in 2.5f64..1000.0) {
        let tol = 1e-12;
        let x = solve_real_k(a, b, c, tol, 200).unwrap();
        let y = solve_real_k(1.0 / a, 1.0 / b, c, tol, 200).unwrap();
        prop_assert!((x.k + y.k).abs() <= 2.0 * tol, "{} vs {}", x.k, y.k);
    }

    #[test]
    fn prime_set_parse_normalizes(v in proptest::collection::vec(prop::sample::select(vec![2u64, 3, 5, 7, 11, 13]), 0..8)) {
        let text: Vec<String> = v.iter().map(u64::to_string).collect();
        let set = PrimeSet::parse(&text.join(",")).unwrap();
        let mut want = v.clone();
        want.sort_unstable();
        want.dedup();
        prop_assert_eq!(set.as_slice(), want.as_slice());
    }
}
