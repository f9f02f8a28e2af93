//! Property-based invariants: random inputs against the structural
//! identities the construction promises.

use proptest::prelude::*;

use idemring::arith::{ext_gcd, factorize, gcd, is_prime, mulmod};
use idemring::engine::{
    all_idempotents_prop51, all_idempotents_prop52, all_idempotents_prop53, mirror_solution,
    solve_split, solve_split_usearch, Split,
};
use idemring::oracle::{crt_idempotents, scan_idempotents_ceiling};

proptest! {
    #[test]
    fn ext_gcd_bezout_identity(a in any::<u64>(), b in any::<u64>()) {
        prop_assume!(a != 0 || b != 0);
        let (g, x, y) = ext_gcd(a, b).unwrap();
        prop_assert_eq!(g, gcd(a, b));
        prop_assert_eq!(a as i128 * x + b as i128 * y, g as i128);
    }

    #[test]
    fn factorize_roundtrips(n in 2u64..) {
        let fac = factorize(n).unwrap();
        let mut prod = 1u128;
        let mut prev = 0u64;
        for &(p, a) in fac.factors() {
            prop_assert!(p > prev);
            prop_assert!(is_prime(p));
            prod *= (p as u128).pow(a);
            prev = p;
        }
        prop_assert_eq!(prod, n as u128);
    }

    #[test]
    fn enumeration_routes_agree(n in 2u64..=200_000) {
        let fac = factorize(n).unwrap();
        let set = all_idempotents_prop51(&fac);
        prop_assert_eq!(&set, &all_idempotents_prop52(&fac));
        prop_assert_eq!(&set, &all_idempotents_prop53(&fac));
        prop_assert_eq!(set.len() as u64, 1u64 << fac.k());
        prop_assert_eq!(set.members(), &crt_idempotents(&fac).members[..]);
        for &e in set.members() {
            prop_assert_eq!(mulmod(e, e, n), e);
            prop_assert!(set.contains(set.complement(e)));
        }
        if n <= 50_000 {
            let scan = scan_idempotents_ceiling(n, 50_000).unwrap();
            prop_assert_eq!(set.members(), &scan.members[..]);
        }
    }

    #[test]
    fn solved_splits_obey_the_theorems(p in 2u64..10_000, m in 2u64..1_000_000) {
        prop_assume!(gcd(p, m) == 1);
        let split = Split::from_coprime(p, m).unwrap();
        let n = split.n();
        let sol = solve_split(&split);
        let (t, r, u) = (sol.t(), sol.r(), sol.u());

        prop_assert_eq!(t, m % p);
        prop_assert!((1..p).contains(&r));
        prop_assert_eq!((r as u128 * t as u128 + 1) % p as u128, 0);
        prop_assert!(u >= 1 && u <= t);
        prop_assert_eq!(gcd(p, r), 1);
        prop_assert_eq!(sol.e_plus() + sol.e_zero(), n + 1);
        prop_assert_eq!(mulmod(sol.e_plus(), sol.e_plus(), n), sol.e_plus());
        prop_assert_eq!(mulmod(sol.e_zero(), sol.e_zero(), n), sol.e_zero());
        prop_assert_eq!(solve_split_usearch(&split), sol);

        // swapping the sides exchanges the two forms
        let swapped = solve_split(&Split::from_coprime(m, p).unwrap());
        prop_assert_eq!(swapped.e_plus(), sol.e_zero());
        prop_assert_eq!(swapped.e_zero(), sol.e_plus());
    }

    #[test]
    fn mirror_is_an_involution(p in 2u64..10_000, m in 2u64..1_000_000) {
        prop_assume!(gcd(p, m) == 1);
        let sol = solve_split(&Split::from_coprime(p, m).unwrap());
        if let Ok(mir) = mirror_solution(&sol) {
            prop_assert_eq!(mir.r(), p - sol.r());
            prop_assert_eq!(mir.t(), p - sol.t());
            prop_assert_eq!(mirror_solution(&mir), Ok(sol));
            // the mirror solves its own modulus directly
            let direct = solve_split(&Split::from_coprime(p, mir.split().m()).unwrap());
            prop_assert_eq!(mir, direct);
        }
    }
}
