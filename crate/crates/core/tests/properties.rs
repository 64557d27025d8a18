use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rghw::codes::{
    rdlp, rghw_oracle, rghw_subspace_oracle, shortened_dim_quotient, singleton_bound,
    CoordinateSet, LinearCode,
};
use rghw::fengrao::{rghw_bound_dual, rghw_bound_primary, OrderedBasis, OwbTable};
use rghw::linalg::Matrix;
use rghw::ramp::RampScheme;
use rghw::semigroup::{z_closed_form, NumericalSemigroup};
use rghw::{Elem, FiniteField, SearchConfig};

fn random_pair(q: u32, n: usize, k1: usize, k2: usize, seed: u64) -> (LinearCode, LinearCode) {
    let f = FiniteField::with_order(q).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let c1 = LinearCode::random(&f, n, k1, &mut rng);
    let c2 = c1.random_subcode(k2, &mut rng);
    (c1, c2)
}

fn random_basis(f: &FiniteField, n: usize, seed: u64) -> OrderedBasis {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let rows: Vec<Vec<Elem>> = (0..n)
            .map(|_| {
                (0..n)
                    .map(|_| rng.random_range(0..f.order()) as Elem)
                    .collect()
            })
            .collect();
        if Matrix::from_rows(n, &rows).rank(f) == n {
            return OrderedBasis::new(f, "random", &rows).unwrap();
        }
    }
}

/// `(q, n, k1, k2, seed)` with `0 ≤ k2 < k1 ≤ n`.
fn pair_params(max_n: usize) -> impl Strategy<Value = (u32, usize, usize, usize, u64)> {
    (prop::sample::select(vec![2u32, 3, 4]), 2..=max_n)
        .prop_flat_map(|(q, n)| (Just(q), Just(n), 1..=n))
        .prop_flat_map(|(q, n, k1)| (Just(q), Just(n), Just(k1), 0..k1, any::<u64>()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn quotient_is_monotone((q, n, k1, k2, seed) in pair_params(8)) {
        let (c1, c2) = random_pair(q, n, k1, k2, seed);
        for mask in 0..1u64 << n {
            let here = shortened_dim_quotient(&c1, &c2, &CoordinateSet::from_mask(n, mask)).unwrap();
            for b in 0..n {
                let up = shortened_dim_quotient(&c1, &c2, &CoordinateSet::from_mask(n, mask | 1 << b)).unwrap();
                prop_assert!(here <= up && up <= here + 1);
            }
        }
    }

    #[test]
    fn both_leakage_formulas_agree((q, n, k1, k2, seed) in pair_params(8)) {
        let (c1, c2) = random_pair(q, n, k1, k2, seed);
        let s = RampScheme::new(c1, c2).unwrap();
        for mask in 0..1u64 << n {
            let (a, b) = s.mutual_information_both(&CoordinateSet::from_mask(n, mask)).unwrap();
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn rghw_respects_singleton_and_rdlp((q, n, k1, k2, seed) in pair_params(8)) {
        let cfg = SearchConfig::default();
        let (c1, c2) = random_pair(q, n, k1, k2, seed);
        let mut last = 0;
        for m in 1..=k1 - k2 {
            let w = rghw_oracle(&c1, &c2, m, &cfg).unwrap();
            prop_assert!(w <= singleton_bound(&c1, m));
            prop_assert!(w > last);
            last = w;
            // M_m = min{ j : K_j ≥ m }
            let smallest = (0..=n).find(|&j| rdlp(&c1, &c2, j, &cfg).unwrap() >= m).unwrap();
            prop_assert_eq!(w, smallest);
        }
    }

    #[test]
    fn order_bounds_are_sound((q, n, k1, k2, seed) in pair_params(7)) {
        let cfg = SearchConfig::default();
        let (c1, c2) = random_pair(q, n, k1, k2, seed);
        let basis = random_basis(c1.field(), n, seed ^ 0x5eed);
        let table = OwbTable::build(&basis, &cfg);
        let (d1, d2) = (c2.dual(), c1.dual());
        for m in 1..=k1 - k2 {
            let p = rghw_bound_primary(&table, &basis, &c1, &c2, m, &cfg).unwrap().value;
            prop_assert!(p <= rghw_oracle(&c1, &c2, m, &cfg).unwrap());
            let d = rghw_bound_dual(&table, &basis, &c1, &c2, m, &cfg).unwrap().value;
            prop_assert!(d <= rghw_oracle(&d1, &d2, m, &cfg).unwrap());
        }
    }

    #[test]
    fn subset_and_subspace_oracles_agree(q in prop::sample::select(vec![2u32, 3, 4]), n in 3usize..=6, seed in any::<u64>()) {
        let cfg = SearchConfig::default();
        let k1 = 1 + (seed % 4) as usize % n.min(4);
        let k2 = (seed / 7) as usize % k1;
        let (c1, c2) = random_pair(q, n, k1, k2, seed);
        for m in 1..=k1 - k2 {
            prop_assert_eq!(
                rghw_oracle(&c1, &c2, m, &cfg).unwrap(),
                rghw_subspace_oracle(&c1, &c2, m, &cfg).unwrap()
            );
        }
    }

    #[test]
    fn rho_bar_separates_subspaces(q in prop::sample::select(vec![2u32, 3]), n in 2usize..=6, k in 1usize..=3, seed in any::<u64>()) {
        let k = k.min(n);
        let f = FiniteField::with_order(q).unwrap();
        let basis = random_basis(&f, n, seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = LinearCode::random(&f, n, k, &mut rng);
        let rho = basis.rho_bar_code(&d).unwrap();
        let mut values: Vec<usize> = d
            .codewords(&SearchConfig::default())
            .unwrap()
            .into_iter()
            .filter(|c| c.iter().any(|&x| x != 0))
            .map(|c| basis.rho_bar(&c).unwrap())
            .collect();
        values.sort_unstable();
        values.dedup();
        prop_assert_eq!(values, rho);
    }

    #[test]
    fn field_axioms_on_larger_fields(q in prop::sample::select(vec![27u32, 32, 49, 81, 125, 243, 256, 1024]), a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
        let f = FiniteField::with_order(q).unwrap();
        let (a, b, c) = ((a % q) as Elem, (b % q) as Elem, (c % q) as Elem);
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
        prop_assert_eq!(f.sub(f.add(a, b), b), a);
        if a != 0 {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            prop_assert_eq!(f.pow(a, (q - 1) as u64), 1);
        }
        let p = f.characteristic();
        prop_assert_eq!(f.frobenius(f.add(a, b)), f.add(f.frobenius(a), f.frobenius(b)));
        prop_assert_eq!(f.frobenius(a) == a, f.pow(a, p as u64) == a);
    }

    #[test]
    fn z_is_monotone_in_m(gens in prop::collection::vec(2u64..9, 2..4)) {
        prop_assume!(gens.iter().fold(0, |g, &a| gcd(g, a)) == 1);
        let s = NumericalSemigroup::new(&gens).unwrap();
        let cfg = SearchConfig::default();
        for mu in 1..=9 {
            let z: Vec<usize> = (1..=mu).map(|m| s.z_function(mu, m, &cfg).unwrap()).collect();
            prop_assert!(z.windows(2).all(|w| w[0] <= w[1]), "{:?} μ={} {:?}", s, mu, z);
        }
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[test]
fn consecutive_shifts_attain_the_minimum() {
    let cfg = SearchConfig::default();
    for a in 2..=9i64 {
        let s = NumericalSemigroup::new(&[a as u64, a as u64 + 1]).unwrap();
        for mu in 1..=a + 1 {
            for m in 1..=mu {
                let z = s.z_function(mu, m, &cfg).unwrap() as i64;
                assert_eq!(z, z_closed_form(a, mu, m).unwrap(), "a={a} μ={mu} m={m}");
                let consecutive: Vec<i64> = (1..m).map(|s| -(m - s)).collect();
                assert_eq!(s.shifted_difference_count(&consecutive).unwrap() as i64, z);
            }
        }
    }
}

#[test]
fn quotient_duality_exhaustive_small() {
    for q in [2u32, 3, 4] {
        for (n, k1, k2) in [(10, 5, 2), (9, 4, 1), (8, 6, 3)] {
            if q == 4 && n > 8 {
                continue;
            }
            let (c1, c2) = random_pair(q, n, k1, k2, 77 + n as u64);
            let (d1, d2) = (c2.dual(), c1.dual());
            for mask in 0..1u64 << n {
                let i = CoordinateSet::from_mask(n, mask);
                let left = (k1 - k2) - shortened_dim_quotient(&c1, &c2, &i.complement()).unwrap();
                assert_eq!(left, shortened_dim_quotient(&d1, &d2, &i).unwrap());
            }
        }
    }
}
