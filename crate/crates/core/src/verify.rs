//! Cross-route verification sweep behind `weylnorm check`.

use std::fmt;

use crate::blasiak::{blasiak_normal_order, BosonString};
use crate::cahill_glauber::weyl_via_cg;
use crate::closed::{zeta_guarded, zeta_nonzero_range, zeta_poly, zeta_sum, HCoeffTable, WeylSpec};
use crate::enumerate::{
    eta_decomposition_check, weyl_bruteforce, weyl_forced, DEFAULT_ETA_CAP, DEFAULT_FORCED_CAP, DEFAULT_SWEEP_CAP,
};
use crate::normal::NormalPoly;
use crate::scalar::Scalar;
use crate::word::{normal_order_word, BosonWord};

/// Longest boson word checked exhaustively against the rewriting oracle.
pub const MAX_EXHAUSTIVE_WORD: u32 = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    pub sweep: u32,
    pub forced: u32,
    pub eta: u32,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { sweep: DEFAULT_SWEEP_CAP, forced: DEFAULT_FORCED_CAP, eta: DEFAULT_ETA_CAP }
    }
}

/// Deliberate corruption used to prove the harness reports failures.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fault {
    /// Adds one to `h_jkuv` before any check reads it.
    CorruptH { j: u32, k: u32, u: u32, v: u32 },
}

#[derive(Clone, Debug, Default)]
pub struct CheckOptions {
    pub max_degree: u32,
    pub caps: Caps,
    pub parallel: bool,
    pub fault: Option<Fault>,
}

impl CheckOptions {
    pub fn new(max_degree: u32) -> Self {
        CheckOptions { max_degree, ..CheckOptions::default() }
    }

    fn table(&self, spec: WeylSpec) -> HCoeffTable {
        let mut table = HCoeffTable::new(spec);
        if let Some(Fault::CorruptH { j, k, u, v }) = self.fault {
            if spec == WeylSpec::new(j, k) && 2 * u + v <= j + k {
                let bumped = table.get(u, v) + Scalar::one();
                table.set(u, v, bumped);
            }
        }
        table
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Mismatch {
    pub check: &'static str,
    pub detail: String,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.check, self.detail)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckLine {
    pub name: &'static str,
    pub checked: usize,
    pub failure: Option<Mismatch>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckReport {
    pub lines: Vec<CheckLine>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.lines.iter().all(|l| l.failure.is_none())
    }

    pub fn first_failure(&self) -> Option<&Mismatch> {
        self.lines.iter().find_map(|l| l.failure.as_ref())
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for line in &self.lines {
            match &line.failure {
                None => writeln!(f, "ok   {:<28} {} cases", line.name, line.checked)?,
                Some(m) => writeln!(f, "FAIL {:<28} {}", line.name, m.detail)?,
            }
        }
        Ok(())
    }
}

/// Runs `check` over `items`, returning how many were examined and the first
/// failure in item order. The parallel path splits into contiguous chunks so
/// the reported failure does not depend on scheduling.
fn sweep<T, F>(items: &[T], parallel: bool, check: F) -> (usize, Option<Mismatch>)
where
    T: Sync,
    F: Fn(&T) -> Option<Mismatch> + Sync,
{
    if !parallel || items.len() < 2 {
        return (items.len(), items.iter().find_map(&check));
    }
    let threads = std::thread::available_parallelism().map_or(1, |n| n.get()).min(items.len());
    let chunk = items.len().div_ceil(threads);
    let first = std::thread::scope(|scope| {
        let handles: Vec<_> = items
            .chunks(chunk)
            .map(|c| {
                let check = &check;
                scope.spawn(move || c.iter().find_map(check))
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("check worker panicked")).collect::<Vec<_>>()
    });
    (items.len(), first.into_iter().flatten().next())
}

/// Describes the first coefficient where two normal forms of `S_jk` differ,
/// translated back to the `(u, v)` indexing of `h_jkuv`.
fn route_witness(spec: WeylSpec, left_name: &str, left: &NormalPoly, right_name: &str, right: &NormalPoly) -> String {
    let diff = left - right;
    let (&(m, n), _) = diff.iter().next().expect("called only on unequal polynomials");
    let degree = spec.degree();
    let slot = if m + n <= degree && (degree - m - n).is_multiple_of(2) {
        format!("u={} v={}", (degree - m - n) / 2, n)
    } else {
        format!("term ad^{m} a^{n} outside the (u,v) range")
    };
    format!(
        "j={} k={} {slot}: {left_name} = {}, {right_name} = {}",
        spec.j,
        spec.k,
        left.coeff(m, n),
        right.coeff(m, n)
    )
}

pub fn run_checks(opts: &CheckOptions) -> CheckReport {
    let max = opts.max_degree;
    let specs = |limit: u32| -> Vec<WeylSpec> { WeylSpec::up_to_degree(limit.min(max)).collect() };
    let mut lines = Vec::new();

    let (checked, failure) = sweep(&specs(opts.caps.sweep), opts.parallel, |&spec| {
        let closed = opts.table(spec).to_normal_poly();
        let brute = weyl_bruteforce(spec);
        if closed != brute {
            return Some(Mismatch {
                check: "closed = brute",
                detail: route_witness(spec, "closed", &closed, "brute", &brute),
            });
        }
        let cg = weyl_via_cg(spec);
        (cg != brute).then(|| Mismatch { check: "cg = brute", detail: route_witness(spec, "cg", &cg, "brute", &brute) })
    });
    lines.push(CheckLine { name: "closed = brute = cg", checked, failure });

    let (checked, failure) = sweep(&specs(opts.caps.forced), opts.parallel, |&spec| {
        let forced = weyl_forced(spec, opts.caps.forced).expect("degree within cap");
        let brute = weyl_bruteforce(spec);
        (forced != brute).then(|| Mismatch {
            check: "forced = brute",
            detail: route_witness(spec, "forced", &forced, "brute", &brute),
        })
    });
    lines.push(CheckLine { name: "forced = brute", checked, failure });

    let eta_items: Vec<(WeylSpec, u32, u32)> =
        specs(opts.caps.eta).into_iter().flat_map(|spec| spec.slots().map(move |(u, v)| (spec, u, v))).collect();
    let (checked, failure) = sweep(&eta_items, opts.parallel, |&(spec, u, v)| {
        let r = eta_decomposition_check(spec, u, v, opts.caps.eta).expect("within cap and range");
        (!r.passed).then(|| Mismatch {
            check: "eta = lambda*xi*zeta",
            detail: format!(
                "j={} k={} u={u} v={v}: permutation sum {} vs lambda*xi*zeta = {}*{}*{}",
                spec.j, spec.k, r.total, r.lambda, r.xi, r.zeta
            ),
        })
    });
    lines.push(CheckLine { name: "eta = lambda*xi*zeta", checked, failure });

    let zeta_items: Vec<(u32, u32)> = (0..=max).flat_map(|j| (0..=max).map(move |k| (j, k))).collect();
    let (_, failure) = sweep(&zeta_items, opts.parallel, |&(j, k)| {
        (0..=j + k + 1).find_map(|t| {
            let values = [zeta_sum(j, k, t), zeta_poly(j, k, t), zeta_guarded(j, k, t), zeta_nonzero_range(j, k, t)];
            values.iter().any(|v| v != &values[0]).then(|| Mismatch {
                check: "zeta forms agree",
                detail: format!(
                    "j={j} k={k} t={t}: sum={} poly={} guarded={} range={}",
                    values[0], values[1], values[2], values[3]
                ),
            })
        })
    });
    let zeta_cases = zeta_items.iter().map(|&(j, k)| (j + k + 2) as usize).sum();
    lines.push(CheckLine { name: "zeta forms agree", checked: zeta_cases, failure });

    let all_specs = specs(max);
    let (checked, failure) = sweep(&all_specs, opts.parallel, |&spec| {
        let report = opts.table(spec).symmetry_report();
        report.conjugate_pairs.witness.map(|w| Mismatch { check: "h pair symmetry", detail: w.to_string() })
    });
    lines.push(CheckLine { name: "h pair symmetry", checked, failure });

    let odd_specs: Vec<WeylSpec> = all_specs.iter().copied().filter(|s| s.j % 2 == 1 && s.k % 2 == 1).collect();
    let (checked, failure) = sweep(&odd_specs, opts.parallel, |&spec| {
        let report = opts.table(spec).symmetry_report();
        report
            .odd_middle_zero
            .and_then(|o| o.witness)
            .map(|w| Mismatch { check: "odd middle zero", detail: w.to_string() })
    });
    lines.push(CheckLine { name: "odd middle zero", checked, failure });

    let (checked, failure) = sweep(&all_specs, opts.parallel, |&spec| {
        let s = opts.table(spec).to_normal_poly();
        let adj = s.adjoint();
        (adj != s).then(|| Mismatch { check: "hermiticity", detail: route_witness(spec, "adjoint", &adj, "S", &s) })
    });
    lines.push(CheckLine { name: "hermiticity", checked, failure });

    let word_items: Vec<(u32, u64)> =
        (0..=max.min(MAX_EXHAUSTIVE_WORD)).flat_map(|len| (0..1u64 << len).map(move |bits| (len, bits))).collect();
    let (checked, failure) = sweep(&word_items, opts.parallel, |&(len, bits)| {
        let word = BosonWord::from_bits(bits, len as usize);
        let rewrite = normal_order_word(&word);
        let blasiak = blasiak_normal_order(&BosonString::blockify(&word));
        (rewrite != blasiak).then(|| Mismatch {
            check: "blasiak = rewrite",
            detail: format!("word {}", crate::textio::render_boson_word(&word)),
        })
    });
    lines.push(CheckLine { name: "blasiak = rewrite", checked, failure });

    CheckReport { lines }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_sweep_passes() {
        let report = run_checks(&CheckOptions::new(4));
        assert!(report.passed(), "{report}");
        assert_eq!(report.lines[0].checked, 15);
    }

    #[test]
    fn degree_zero_is_trivial() {
        let report = run_checks(&CheckOptions::new(0));
        assert!(report.passed());
        assert!(report.lines.iter().all(|l| l.checked <= 2));
    }

    #[test]
    fn planted_fault_is_reported_with_witness() {
        let opts = CheckOptions { fault: Some(Fault::CorruptH { j: 2, k: 1, u: 1, v: 0 }), ..CheckOptions::new(4) };
        let report = run_checks(&opts);
        assert!(!report.passed());
        let first = report.first_failure().unwrap();
        assert_eq!(first.check, "closed = brute");
        assert!(first.detail.starts_with("j=2 k=1 u=1 v=0"), "{}", first.detail);
    }

    #[test]
    fn parallel_matches_sequential() {
        let seq = run_checks(&CheckOptions::new(5));
        let par = run_checks(&CheckOptions { parallel: true, ..CheckOptions::new(5) });
        assert_eq!(seq, par);
        let fault = Some(Fault::CorruptH { j: 1, k: 3, u: 0, v: 1 });
        let seq = run_checks(&CheckOptions { fault, ..CheckOptions::new(5) });
        let par = run_checks(&CheckOptions { fault, parallel: true, ..CheckOptions::new(5) });
        assert_eq!(seq, par);
    }
}
