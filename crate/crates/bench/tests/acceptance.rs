//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails. Run with `cargo test -p spm-bench --test acceptance`.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spm_bench::config::{table_cells, table_methods, Table};
use spm_bench::report::RunReport;
use spm_bench::{run_grid, BenchConfig};
use spm_core::matrix::norm_inf;
use spm_core::problems::{build_example1, build_example2, build_example3, ConvectionCase, Problem};
use spm_core::solver::diagnostics::{error_energy, greedy_bound_check, lambda_max_estimate};
use spm_core::solver::{projection_step, solve_observed, sweep, twod_dspm_step, Method, SolverState, StoppingRule};
use spm_core::{DenseMatrix, IndexSet, SelectionStrategy, SpdOperator, StepObserver};
use std::process::ExitCode;

/// Published sweep counts, in `table_methods()` order:
/// gap 2, gap 500, greedy m = 2, 3, 4, 5.
const TABLE1: [usize; 6] = [6, 7, 5, 4, 3, 2];
const TABLE2: [usize; 6] = [8, 9, 7, 6, 4, 4];
const TABLE3: [[usize; 6]; 3] = [
    [391, 323, 226, 153, 116, 94],
    [312, 256, 192, 131, 100, 80],
    [302, 250, 218, 151, 115, 93],
];
const TABLE_SWEEP_TOL: usize = 1;
const TABLE3_REL_TOL: f64 = 0.15;
const DECREASE_REL_TOL: f64 = 1e-9;
/// Steps are checked while the error energy is at least this fraction of
/// its starting value; below it the residual's own roundoff dominates.
const ENERGY_FLOOR: f64 = 1e-8;
const GALERKIN_TOL: f64 = 1e-12;
const KERNEL_TOL: f64 = 1e-12;

type Verdict = Result<String, String>;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

fn unit(n: usize, i: usize) -> Vec<f64> {
    let mut e = vec![0.0; n];
    e[i] = 1.0;
    e
}

fn to_nalgebra(op: &dyn SpdOperator) -> DMatrix<f64> {
    let n = op.dim();
    DMatrix::from_fn(n, n, |i, j| op.entry(i, j))
}

/// Dominance-shifted random symmetric integer matrix with a planted integer
/// solution; `x*` is then recomputed by a dense LU solve as the oracle.
struct RandomSystem {
    a: DenseMatrix,
    b: Vec<f64>,
    x_star: Vec<f64>,
    x0: Vec<f64>,
}

fn random_system(seed: u64, n: usize) -> RandomSystem {
    let mut r = rng(seed);
    let mut a = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..i {
            let v = f64::from(r.gen_range(-9i32..=9));
            a[i * n + j] = v;
            a[j * n + i] = v;
        }
    }
    for i in 0..n {
        let radius: f64 = (0..n).map(|j| a[i * n + j].abs()).sum();
        a[i * n + i] = radius + f64::from(r.gen_range(1i32..=20));
    }
    let a = DenseMatrix::from_row_major(n, a).unwrap();
    let planted: Vec<f64> = (0..n).map(|_| f64::from(r.gen_range(-20i32..=20))).collect();
    let b = a.matvec(&planted).unwrap();
    let lu = to_nalgebra(&a).lu().solve(&DVector::from_column_slice(&b)).expect("nonsingular");
    let x_star: Vec<f64> = lu.iter().copied().collect();
    assert!(max_abs_diff(&x_star, &planted) <= 1e-10, "oracle disagrees with planted solution");
    let x0 = (0..n).map(|_| r.gen_range(-1.0..1.0)).collect();
    RandomSystem { a, b, x_star, x0 }
}

fn random_subset(r: &mut impl Rng, n: usize, m: usize) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..n).collect();
    for k in 0..m {
        let j = r.gen_range(k..n);
        idx.swap(k, j);
    }
    let mut s = idx[..m].to_vec();
    s.sort_unstable();
    s
}

// ---------------------------------------------------------------- tables

fn sweeps_of(reports: &[RunReport]) -> Result<Vec<usize>, String> {
    reports
        .iter()
        .map(|r| {
            if r.converged() {
                Ok(r.sweeps().unwrap())
            } else {
                Err(format!("{} / {} did not converge: {:?}", r.problem, r.method, r.outcome))
            }
        })
        .collect()
}

fn labelled(counts: &[usize]) -> String {
    table_methods()
        .iter()
        .zip(counts)
        .map(|(m, c)| format!("{m}={c}"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn check_exact_table(reports: &[RunReport], expected: &[usize; 6]) -> Verdict {
    let got = sweeps_of(reports)?;
    let worst = got.iter().zip(expected).map(|(g, e)| g.abs_diff(*e)).max().unwrap();
    let detail = format!("got [{}], expected {expected:?}, max deviation {worst}", labelled(&got));
    if worst <= TABLE_SWEEP_TOL {
        Ok(detail)
    } else {
        Err(detail)
    }
}

/// Greedy m = 2..5 entries of a row in `table_methods()` order.
fn greedy_part(row: &[usize]) -> &[usize] {
    &row[2..]
}

fn check_table3_ordering(rows: &[Vec<usize>]) -> Verdict {
    let mut problems = Vec::new();
    for (case, row) in rows.iter().enumerate() {
        let g = greedy_part(row);
        if !g.windows(2).all(|w| w[1] < w[0]) {
            problems.push(format!("case {}: greedy counts {g:?} not strictly decreasing", case + 1));
        }
        if g[0] >= row[0] || g[0] >= row[1] {
            problems.push(format!("case {}: greedy m=2 ({}) does not beat gaps ({}, {})", case + 1, g[0], row[0], row[1]));
        }
    }
    let detail = rows
        .iter()
        .enumerate()
        .map(|(c, r)| format!("case {}: [{}]", c + 1, labelled(r)))
        .collect::<Vec<_>>()
        .join("; ");
    if problems.is_empty() {
        Ok(detail)
    } else {
        Err(format!("{}; {detail}", problems.join("; ")))
    }
}

fn table3_quantitative(rows: &[Vec<usize>]) -> (bool, String) {
    let mut worst = 0.0f64;
    for (row, expected) in rows.iter().zip(&TABLE3) {
        for (g, e) in row.iter().zip(expected) {
            worst = worst.max((*g as f64 - *e as f64).abs() / *e as f64);
        }
    }
    let within = worst <= TABLE3_REL_TOL;
    (
        within,
        format!(
            "max relative deviation from published counts {:.1}% (tolerance {:.0}%); published {TABLE3:?}",
            100.0 * worst,
            100.0 * TABLE3_REL_TOL
        ),
    )
}

fn check_monotone_in_m(rows: &[Vec<usize>]) -> Verdict {
    let bad: Vec<String> = rows
        .iter()
        .filter(|r| !greedy_part(r).windows(2).all(|w| w[1] <= w[0]))
        .map(|r| format!("{:?}", greedy_part(r)))
        .collect();
    let detail = format!("{} rows checked", rows.len());
    if bad.is_empty() {
        Ok(detail)
    } else {
        Err(format!("{detail}; increasing in m: {}", bad.join(", ")))
    }
}

// ------------------------------------------------------- step properties

/// Checks the energy identity for every step of a run.
struct DecreaseChecker<'a> {
    op: &'a dyn SpdOperator,
    x_star: &'a [f64],
    e0: f64,
    before: Option<f64>,
    checked: usize,
    worst: f64,
    failures: Vec<String>,
}

impl<'a> DecreaseChecker<'a> {
    fn new(op: &'a dyn SpdOperator, x_star: &'a [f64], x0: &[f64]) -> Self {
        DecreaseChecker {
            op,
            x_star,
            e0: error_energy(op, x_star, x0),
            before: None,
            checked: 0,
            worst: 0.0,
            failures: Vec::new(),
        }
    }
}

impl StepObserver for DecreaseChecker<'_> {
    fn before_step(&mut self, _indices: &[usize], state: &SolverState) {
        let e = error_energy(self.op, self.x_star, &state.x);
        self.before = (e >= ENERGY_FLOOR * self.e0).then_some(e);
    }

    fn after_step(&mut self, indices: &[usize], decrease: f64, state: &SolverState) {
        let Some(before) = self.before.take() else { return };
        let after = error_energy(self.op, self.x_star, &state.x);
        let rel = ((before - after) - decrease).abs() / before;
        self.checked += 1;
        self.worst = self.worst.max(rel);
        if rel > DECREASE_REL_TOL && self.failures.len() < 5 {
            self.failures.push(format!("S={indices:?}: relative mismatch {rel:e}"));
        }
    }
}

fn criterion4_exact_decrease() -> Verdict {
    let (mut checked, mut worst, mut failures) = (0usize, 0.0f64, Vec::new());
    let rule = StoppingRule::new(1e-10, 200).unwrap();
    for seed in 0..100u64 {
        let mut r = rng(40_000 + seed);
        let n = r.gen_range(2..=50);
        let sys = random_system(seed, n);
        let method = match seed % 4 {
            0 => Method::greedy(r.gen_range(1..=n.min(6))),
            1 => Method::gap_pair(r.gen_range(1..n)),
            2 => Method::gauss_seidel(),
            _ => Method::DoubleSuccessive { gap: r.gen_range(1..n) },
        };
        let mut obs = DecreaseChecker::new(&sys.a, &sys.x_star, &sys.x0);
        solve_observed(&sys.a, &sys.b, &sys.x0, method, rule, &mut obs).map_err(|e| e.to_string())?;

        // Arbitrary subsets, not just the ones a rule would pick.
        let mut st = SolverState::new(&sys.a, &sys.b, &sys.x0).unwrap();
        for _ in 0..10 {
            let m = r.gen_range(1..=n.min(8));
            let s = IndexSet::new(random_subset(&mut r, n, m), n).unwrap();
            obs.before_step(s.as_slice(), &st);
            let d = projection_step(&sys.a, &s, &mut st).map_err(|e| e.to_string())?;
            obs.after_step(s.as_slice(), d, &st);
        }
        checked += obs.checked;
        worst = worst.max(obs.worst);
        failures.extend(obs.failures.into_iter().map(|f| format!("seed {seed} {method}: {f}")));
    }
    let detail = format!("{checked} steps on 100 systems (n <= 50), worst relative mismatch {worst:e}");
    if failures.is_empty() {
        Ok(detail)
    } else {
        Err(format!("{detail}; {}", failures.join("; ")))
    }
}

/// Checks that the selected residual entries vanish after each step.
#[derive(Default)]
struct GalerkinChecker {
    r_scale: f64,
    checked: usize,
    worst: f64,
    failures: Vec<String>,
}

impl StepObserver for GalerkinChecker {
    fn before_step(&mut self, _indices: &[usize], state: &SolverState) {
        self.r_scale = norm_inf(&state.r);
    }

    fn after_step(&mut self, indices: &[usize], _decrease: f64, state: &SolverState) {
        if self.r_scale == 0.0 {
            return;
        }
        let rel = indices.iter().map(|&i| state.r[i].abs()).fold(0.0, f64::max) / self.r_scale;
        self.checked += 1;
        self.worst = self.worst.max(rel);
        if rel > GALERKIN_TOL && self.failures.len() < 5 {
            self.failures.push(format!("S={indices:?}: {rel:e}"));
        }
    }
}

fn criterion5_petrov_galerkin() -> Verdict {
    let mut obs = GalerkinChecker::default();
    let rule = StoppingRule::default();
    let strategies = |n: usize| {
        vec![
            Method::gauss_seidel(),
            Method::gap_pair(2.min(n - 1)),
            Method::gap_pair(n / 2),
            Method::greedy(1),
            Method::greedy(3.min(n)),
            Method::greedy(5.min(n)),
        ]
    };
    for seed in 0..30u64 {
        let n = 2 + (seed as usize * 7) % 49;
        let sys = random_system(70_000 + seed, n);
        for method in strategies(n) {
            solve_observed(&sys.a, &sys.b, &sys.x0, method, rule, &mut obs).map_err(|e| e.to_string())?;
        }
    }
    let problems: Vec<Problem> = vec![
        build_example1(200).unwrap(),
        build_example2(200).unwrap(),
        build_example3(ConvectionCase::Two, 12).unwrap(),
    ];
    for p in &problems {
        for method in strategies(p.dim()) {
            solve_observed(&*p.operator, &p.b, &p.x0, method, rule, &mut obs).map_err(|e| e.to_string())?;
        }
    }
    let detail = format!("{} steps, worst |r[S]| / ||r_before||_inf = {:e}", obs.checked, obs.worst);
    if obs.failures.is_empty() {
        Ok(detail)
    } else {
        Err(format!("{detail}; {}", obs.failures.join("; ")))
    }
}

struct BoundChecker {
    m: usize,
    lambda_max: f64,
    r_before: Vec<f64>,
    checked: usize,
    min_ratio: f64,
    failures: usize,
}

impl StepObserver for BoundChecker {
    fn before_step(&mut self, _indices: &[usize], state: &SolverState) {
        self.r_before.clone_from(&state.r);
    }

    fn after_step(&mut self, _indices: &[usize], decrease: f64, _state: &SolverState) {
        self.checked += 1;
        let n = self.r_before.len() as f64;
        let bound = self.m as f64 / (n * self.lambda_max) * self.r_before.iter().map(|v| v * v).sum::<f64>();
        if bound > 0.0 {
            self.min_ratio = self.min_ratio.min(decrease / bound);
        }
        if !greedy_bound_check(&self.r_before, self.m, self.lambda_max, decrease) {
            self.failures += 1;
        }
    }
}

fn criterion6_greedy_bound() -> Verdict {
    let (mut checked, mut min_ratio, mut failures) = (0, f64::INFINITY, Vec::new());
    for n in [20, 50, 200] {
        for (name, p) in [("example1", build_example1(n).unwrap()), ("example2", build_example2(n).unwrap())] {
            let op = &*p.operator;
            let lambda_max = lambda_max_estimate(op);
            for m in [1, 2, 3, 5] {
                let mut obs = BoundChecker {
                    m,
                    lambda_max,
                    r_before: Vec::new(),
                    checked: 0,
                    min_ratio: f64::INFINITY,
                    failures: 0,
                };
                solve_observed(op, &p.b, &p.x0, Method::greedy(m), StoppingRule::default(), &mut obs)
                    .map_err(|e| e.to_string())?;
                checked += obs.checked;
                min_ratio = min_ratio.min(obs.min_ratio);
                if obs.failures > 0 {
                    failures.push(format!("{name} n={n} m={m}: {} steps below bound", obs.failures));
                }
            }
        }
    }
    let detail = format!("{checked} greedy steps, smallest decrease/bound ratio {min_ratio:.3}");
    if failures.is_empty() {
        Ok(detail)
    } else {
        Err(format!("{detail}; {}", failures.join("; ")))
    }
}

fn gauss_seidel_sweep(op: &dyn SpdOperator, b: &[f64], x: &mut [f64]) {
    let n = op.dim();
    for i in 0..n {
        let mut s = b[i];
        for j in (0..n).filter(|&j| j != i) {
            s -= op.entry(i, j) * x[j];
        }
        x[i] = s / op.entry(i, i);
    }
}

fn criterion7_kernel_equivalence() -> Verdict {
    let mut failures = Vec::new();
    let mut worst_2d = 0.0f64;
    for seed in 0..50u64 {
        let mut r = rng(80_000 + seed);
        let n = r.gen_range(2..=30);
        let sys = random_system(81_000 + seed, n);
        let st = SolverState::new(&sys.a, &sys.b, &sys.x0).unwrap();
        let pair = random_subset(&mut r, n, 2);
        let mut general = st.clone();
        let dg = projection_step(&sys.a, &IndexSet::new(pair.clone(), n).unwrap(), &mut general)
            .map_err(|e| e.to_string())?;
        let mut closed = st.clone();
        let dc = twod_dspm_step(&sys.a, &unit(n, pair[0]), &unit(n, pair[1]), &mut closed).map_err(|e| e.to_string())?;
        let diff = max_abs_diff(&general.x, &closed.x)
            .max(max_abs_diff(&general.r, &closed.r))
            .max((dg - dc).abs() / dg.abs().max(1.0));
        worst_2d = worst_2d.max(diff);
    }
    if worst_2d > KERNEL_TOL {
        failures.push(format!("2D kernel vs projection differ by {worst_2d:e}"));
    }

    let mut worst_gs = 0.0f64;
    for seed in 0..20u64 {
        let sys = random_system(82_000 + seed, 5 + seed as usize);
        let mut reference = sys.x0.clone();
        let mut ours = SolverState::new(&sys.a, &sys.b, &sys.x0).unwrap();
        for _ in 0..3 {
            gauss_seidel_sweep(&sys.a, &sys.b, &mut reference);
            sweep(&sys.a, SelectionStrategy::Cyclic, &mut ours).map_err(|e| e.to_string())?;
        }
        worst_gs = worst_gs.max(max_abs_diff(&reference, &ours.x));
    }
    if worst_gs > KERNEL_TOL {
        failures.push(format!("cyclic sweep vs Gauss-Seidel differ by {worst_gs:e}"));
    }

    let mut nesting_violations = 0;
    for seed in 0..100u64 {
        let mut r = rng(83_000 + seed);
        let n = r.gen_range(3..=25);
        let sys = random_system(84_000 + seed, n);
        let st = SolverState::new(&sys.a, &sys.b, &sys.x0).unwrap();
        let m2 = r.gen_range(2..=n);
        let big = random_subset(&mut r, n, m2);
        let m1 = r.gen_range(1..m2);
        let small: Vec<usize> = random_subset(&mut r, m2, m1).iter().map(|&k| big[k]).collect();
        let d1 = projection_step(&sys.a, &IndexSet::new(small, n).unwrap(), &mut st.clone()).map_err(|e| e.to_string())?;
        let d2 = projection_step(&sys.a, &IndexSet::new(big, n).unwrap(), &mut st.clone()).map_err(|e| e.to_string())?;
        if d2 < d1 - KERNEL_TOL * d1.abs().max(1.0) {
            nesting_violations += 1;
        }
    }
    if nesting_violations > 0 {
        failures.push(format!("nesting violated in {nesting_violations} of 100 draws"));
    }
    let detail = format!("2D max diff {worst_2d:e} (50), GS max diff {worst_gs:e} (20), nesting 100 draws");
    if failures.is_empty() {
        Ok(detail)
    } else {
        Err(format!("{detail}; {}", failures.join("; ")))
    }
}

// ------------------------------------------------------------------ main

fn report(id: &str, title: &str, verdict: &Verdict) -> bool {
    match verdict {
        Ok(detail) => println!("PASS criterion {id}: {title} — {detail}"),
        Err(detail) => println!("FAIL criterion {id}: {title} — {detail}"),
    }
    verdict.is_ok()
}

fn main() -> ExitCode {
    let rule = StoppingRule::default();
    let run = |table| run_grid(&BenchConfig { cells: table_cells(table), rule });
    let t1 = run(Table::Table1);
    let t2 = run(Table::Table2);
    let t3 = run(Table::Table3);

    let mut ok = true;
    ok &= report("1", "Table 1 sweep counts within ±1", &check_exact_table(&t1, &TABLE1));
    ok &= report("2", "Table 2 sweep counts within ±1", &check_exact_table(&t2, &TABLE2));

    let t3_rows: Result<Vec<Vec<usize>>, String> = t3.chunks(6).map(sweeps_of).collect();
    match &t3_rows {
        Ok(rows) => {
            ok &= report("3a", "Table 3 ordering (decreasing in m, greedy m=2 beats gaps)", &check_table3_ordering(rows));
            let (within, detail) = table3_quantitative(rows);
            let status = if within { "MATCHED" } else { "NOT MATCHED" };
            println!(
                "INFO criterion 3b: Table 3 counts within ±15% — {status}: {detail}; the published operator \
                 construction is not fully specified, so this part is reported, not gated"
            );
        }
        Err(e) => ok &= report("3", "Table 3 runs", &Err(e.clone())),
    }

    ok &= report("4", "exact A-norm decrease on random SPD systems", &criterion4_exact_decrease());
    ok &= report("5", "selected residual entries vanish after each step", &criterion5_petrov_galerkin());
    ok &= report("6", "greedy decrease lower bound", &criterion6_greedy_bound());
    ok &= report("7", "kernel equivalences and nesting", &criterion7_kernel_equivalence());

    let monotone = (|| -> Verdict {
        let mut rows = vec![sweeps_of(&t1)?, sweeps_of(&t2)?];
        rows.extend(t3_rows.clone()?);
        check_monotone_in_m(&rows)
    })();
    ok &= report("8", "sweeps non-increasing in m on Tables 1-3", &monotone);

    if ok {
        println!("acceptance: all gated criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: FAILED");
        ExitCode::FAILURE
    }
}
