//! Ground-truth generators the engine is validated against: a definition
//! scan over `[0, n)` and a CRT reconstruction over factor subsets. The two
//! are independent of the split solver and of each other.

use crate::arith::{invmod, mulmod, Factorization};
use crate::error::{Error, Result};

/// Default cost guard for the definition scan.
pub const DEFAULT_SCAN_CEILING: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleMethod {
    DefinitionScan,
    CrtReconstruction,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    pub n: u64,
    pub members: Vec<u64>,
    pub method: OracleMethod,
}

/// Every residue `a` in `[0, n)` with `a*a = a (mod n)`, by direct scan.
pub fn scan_idempotents(n: u64) -> Result<OracleResult> {
    scan_idempotents_ceiling(n, DEFAULT_SCAN_CEILING)
}

/// Definition scan with an explicit cost ceiling.
pub fn scan_idempotents_ceiling(n: u64, ceiling: u64) -> Result<OracleResult> {
    if n < 2 {
        return Err(Error::NTooSmall(n));
    }
    if n > ceiling {
        return Err(Error::AboveScanCeiling { n, ceiling });
    }
    Ok(OracleResult {
        n,
        members: scan_range(0, n, n),
        method: OracleMethod::DefinitionScan,
    })
}

/// Definition scan split across `threads` contiguous chunks. Chunks are
/// concatenated in range order, so the output does not depend on thread
/// scheduling.
pub fn scan_idempotents_parallel(n: u64, ceiling: u64, threads: usize) -> Result<OracleResult> {
    if n < 2 {
        return Err(Error::NTooSmall(n));
    }
    if n > ceiling {
        return Err(Error::AboveScanCeiling { n, ceiling });
    }
    let threads = threads.clamp(1, 64) as u64;
    let chunk = n.div_ceil(threads);
    let members = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..threads)
            .map(|i| {
                let lo = i * chunk;
                let hi = ((i + 1) * chunk).min(n);
                scope.spawn(move || scan_range(lo, hi, n))
            })
            .collect();
        let mut members = Vec::new();
        for handle in handles {
            members.extend(handle.join().expect("scan worker panicked"));
        }
        members
    });
    Ok(OracleResult {
        n,
        members,
        method: OracleMethod::DefinitionScan,
    })
}

fn scan_range(lo: u64, hi: u64, n: u64) -> Vec<u64> {
    (lo..hi).filter(|&a| mulmod(a, a, n) == a).collect()
}

/// For each of the `2^k` subsets of prime-power factors, reconstruct the
/// unique residue that is 1 modulo the chosen factors and 0 modulo the
/// rest. Moduli are combined incrementally (Garner style) so nothing
/// exceeds 64 bits.
pub fn crt_idempotents(fac: &Factorization) -> OracleResult {
    let k = fac.k();
    let moduli: Vec<u64> = (0..k as usize).map(|i| fac.prime_power(i)).collect();
    let mut members = Vec::with_capacity(1 << k);
    for mask in 0u32..1 << k {
        let mut x = 0u64;
        let mut modulus = 1u64;
        for (i, &q) in moduli.iter().enumerate() {
            let target = u64::from(mask >> i & 1);
            // lift x from `modulus` to `modulus * q`
            let delta = (target + q - x % q) % q;
            let step = mulmod(delta, invmod(modulus % q, q).expect("moduli coprime"), q);
            x += modulus * step;
            modulus *= q;
        }
        members.push(x);
    }
    members.sort_unstable();
    OracleResult {
        n: fac.n(),
        members,
        method: OracleMethod::CrtReconstruction,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::factorize;

    #[test]
    fn scan_known_values() {
        assert_eq!(
            scan_idempotents(30).unwrap().members,
            vec![0, 1, 6, 10, 15, 16, 21, 25]
        );
        assert_eq!(scan_idempotents(338).unwrap().members, vec![0, 1, 169, 170]);
        assert_eq!(scan_idempotents(7).unwrap().members, vec![0, 1]);
    }

    #[test]
    fn scan_respects_ceiling() {
        assert_eq!(
            scan_idempotents_ceiling(1_001, 1_000),
            Err(Error::AboveScanCeiling { n: 1_001, ceiling: 1_000 })
        );
        assert!(scan_idempotents_ceiling(1_000, 1_000).is_ok());
        assert_eq!(scan_idempotents(1), Err(Error::NTooSmall(1)));
    }

    #[test]
    fn parallel_scan_is_deterministic() {
        let serial = scan_idempotents(13_860).unwrap();
        for threads in [1, 2, 3, 7, 16] {
            let par = scan_idempotents_parallel(13_860, DEFAULT_SCAN_CEILING, threads).unwrap();
            assert_eq!(par.members, serial.members, "threads = {threads}");
        }
    }

    #[test]
    fn crt_known_values() {
        let fac = factorize(2_025).unwrap();
        assert_eq!(crt_idempotents(&fac).members, vec![0, 1, 325, 1_701]);
        let fac = factorize(2).unwrap();
        assert_eq!(crt_idempotents(&fac).members, vec![0, 1]);
    }

    #[test]
    fn crt_matches_scan_on_larger_n() {
        let fac = factorize(13_860).unwrap();
        let crt = crt_idempotents(&fac);
        assert_eq!(crt.members.len(), 32);
        assert_eq!(crt.members, scan_idempotents(13_860).unwrap().members);
    }

    #[test]
    fn crt_count_is_power_of_two() {
        for n in [4u64, 12, 30, 210, 243, 9_699_690] {
            let fac = factorize(n).unwrap();
            let crt = crt_idempotents(&fac);
            assert_eq!(crt.members.len(), 1 << fac.k(), "n = {n}");
            for &e in &crt.members {
                assert_eq!(mulmod(e, e, n), e);
            }
        }
    }
}
