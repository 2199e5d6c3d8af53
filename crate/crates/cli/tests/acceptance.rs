//! Acceptance criteria, one PASS/FAIL line each. Run with `-- --long` to
//! also materialize and check every tree of the four-ternary class.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use staged_core::analyze::{incidence_matrix, screen};
use staged_core::ideal::{minimal_primes, IdealBasis};
use staged_core::poly::{Indeterminate, Monomial};
use staged_core::{
    parse_polynomial, staged_trees, Enumerator, EquivalenceClass, EventTree, Nesting, SupportSet,
};
use staged_trees::json::parse_tree;
use staged_trees::table::incidence_to_csv;

type Outcome = Result<String, String>;

/// Criteria that cannot hold as stated; the ledger records why.
const UNATTAINABLE: &[&str] = &["2b"];

fn fixture(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn support(name: &str) -> SupportSet {
    let p = parse_polynomial(fixture(name).trim()).expect("fixture polynomial parses");
    SupportSet::from_polynomial(&p).expect("fixture support is valid")
}

fn canonical_lines(name: &str) -> BTreeSet<String> {
    fixture(name)
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            Nesting::parse(l)
                .expect("fixture nesting parses")
                .canonical()
                .to_string()
        })
        .collect()
}

fn forms(class: &EquivalenceClass) -> BTreeSet<String> {
    class.canonical_forms().map(String::from).collect()
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let value = f();
    (value, start.elapsed())
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn var(name: &str) -> Indeterminate {
    Indeterminate::new(name).unwrap()
}

fn criterion_1() -> Outcome {
    let c = support("running_example.poly");
    let ((primes, class), elapsed) = timed(|| {
        let primes =
            minimal_primes(&IdealBasis::interreduce(c.monomials().iter().cloned())).unwrap();
        (primes, staged_trees(&c).unwrap())
    });
    let found: BTreeSet<BTreeSet<String>> = primes
        .iter()
        .map(|p| p.vars().iter().map(|x| x.name().to_string()).collect())
        .collect();
    let expected: BTreeSet<BTreeSet<String>> = fixture("running_example.primes.txt")
        .lines()
        .map(|l| l.split_whitespace().map(String::from).collect())
        .collect();
    ensure(found == expected, format!("minimal primes {found:?}"))?;
    ensure(
        forms(&class) == canonical_lines("running_example.nestings.txt"),
        format!("class {:?}", forms(&class)),
    )?;
    ensure(
        elapsed < Duration::from_secs(1),
        format!("took {elapsed:?}"),
    )?;
    Ok(format!("3 minimal primes, 2 trees, {elapsed:?}"))
}

fn criterion_2a() -> Outcome {
    let class = staged_trees(&support("shared_stage.poly")).unwrap();
    ensure(
        forms(&class) == canonical_lines("shared_stage.nestings.txt"),
        format!("class {:?}", forms(&class)),
    )?;
    Ok("2 staged trees".into())
}

fn criterion_2b() -> Outcome {
    let c = support("shared_stage.poly");
    let staged = forms(&staged_trees(&c).unwrap());
    let all = forms(&Enumerator::new(&c).unwrap().include_unstaged(true).run());
    let extra: Vec<&String> = all.difference(&staged).collect();
    let expected = canonical_lines("shared_stage.unstaged.txt");
    ensure(
        extra.len() == 1 && expected.contains(extra[0]),
        format!(
            "skipping the stage check adds {} trees; expected exactly {:?} (its root floret is not a minimal prime)",
            extra.len(),
            expected
        ),
    )?;
    Ok("one extra unstaged tree".into())
}

fn criterion_3() -> Outcome {
    let c = support("chds.poly");
    let (class, elapsed) = timed(|| staged_trees(&c).unwrap());
    ensure(class.len() == 4, format!("{} trees", class.len()))?;
    ensure(
        forms(&class) == canonical_lines("chds.nestings.txt"),
        format!("class {:?}", forms(&class)),
    )?;
    ensure(
        elapsed < Duration::from_secs(1),
        format!("took {elapsed:?}"),
    )?;
    let tree = parse_tree(&fixture("chds.tree.json")).map_err(|e| e.to_string())?;
    ensure(
        tree.interpolating_polynomial() == c.to_polynomial(),
        "tree JSON does not interpolate to the polynomial",
    )?;
    let printed = Nesting::parse(fixture("chds.printed_r1.txt").trim()).unwrap();
    ensure(
        printed.expand() != c.to_polynomial(),
        "printed r1 unexpectedly expands to the polynomial",
    )?;
    Ok(format!("4 trees, {elapsed:?}"))
}

fn criterion_4(long: bool) -> Outcome {
    let binary = support("binary4.poly");
    let (n, elapsed) = timed(|| Enumerator::new(&binary).unwrap().count());
    ensure(n == 576, format!("binary count {n}"))?;
    ensure(
        elapsed < Duration::from_secs(30),
        format!("binary took {elapsed:?}"),
    )?;
    let ternary = support("ternary4.poly");
    let mut e = Enumerator::new(&ternary).unwrap();
    let (m, t_elapsed) = timed(|| e.count());
    ensure(m == 55_296, format!("ternary count {m}"))?;
    if !long {
        return Ok(format!(
            "576 in {elapsed:?}; 55296 counted in {t_elapsed:?} (per-tree checks need --long)"
        ));
    }
    let target = ternary.to_polynomial();
    let mut seen = BTreeSet::new();
    let mut bad = 0usize;
    let ((), v_elapsed) = timed(|| {
        e.visit(|t| {
            if t.leaves().len() != 81 || !t.is_staged() || t.interpolating_polynomial() != target {
                bad += 1;
            }
            seen.insert(t.canonical_form());
        })
    });
    ensure(
        bad == 0,
        format!("{bad} trees with wrong leaves, stages or polynomial"),
    )?;
    ensure(
        seen.len() == 55_296,
        format!("{} distinct trees", seen.len()),
    )?;
    Ok(format!(
        "576 in {elapsed:?}; 55296 distinct trees with 81 leaves in {v_elapsed:?}"
    ))
}

fn criterion_5() -> Outcome {
    let c = support("counterexample.poly");
    let report = screen(&c.to_polynomial());
    ensure(report.passes(), format!("screen failed: {report:?}"))?;
    let n = Enumerator::new(&c).unwrap().count();
    ensure(n == 0, format!("class count {n}"))?;
    Ok("screen passes, class empty".into())
}

fn random_generators(rng: &mut ChaCha8Rng) -> Vec<Monomial> {
    let d = rng.gen_range(1..=12);
    let k = rng.gen_range(1..10);
    (0..k)
        .map(|_| {
            let mask: u16 = rng.gen_range(1..(1u32 << d)) as u16;
            Monomial::from_vars(
                (0..d)
                    .filter(|i| mask & (1 << i) != 0)
                    .map(|i| var(&format!("v{i:02}"))),
            )
            .unwrap()
        })
        .collect()
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let cases = 1000;
    for case in 0..cases {
        let gens = random_generators(&mut rng);
        let ours: Vec<Vec<Indeterminate>> = minimal_primes(&IdealBasis::interreduce(gens.clone()))
            .unwrap()
            .iter()
            .map(|p| p.vars().to_vec())
            .collect();
        ensure(
            ours == common::brute_force_primes(&gens),
            format!("case {case}: {gens:?}"),
        )?;
    }
    Ok(format!("{cases} instances, 0 discrepancies"))
}

fn criterion_7() -> Outcome {
    let mut found = 0;
    let mut saturated = 0;
    for seed in 0..600u64 {
        for sat in [false, true] {
            let t = common::tree_from_seed(seed * 2 + sat as u64, 10, sat);
            let c = t.interpolating_polynomial();
            if !c.is_square_free() {
                continue;
            }
            let class = staged_trees(&SupportSet::from_polynomial(&c).unwrap()).unwrap();
            ensure(
                class.contains(&t),
                format!("{} missing from its class", t.canonical_form()),
            )?;
            found += 1;
            if t.is_saturated() {
                ensure(
                    class.len() == 1,
                    format!("saturated {} has class size {}", t, class.len()),
                )?;
                saturated += 1;
            }
        }
    }
    ensure(found >= 500, format!("only {found} trees"))?;
    Ok(format!(
        "{found} trees recovered, {saturated} saturated with class size 1"
    ))
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut cases = 0;
    let mut nonempty = 0;
    for seed in 0..4000u64 {
        let t = common::tree_from_seed(seed, 8, false);
        if t.labels().len() > 5 {
            continue;
        }
        let c = SupportSet::from_polynomial(&t.interpolating_polynomial()).unwrap();
        let ours = forms(&staged_trees(&c).unwrap());
        ensure(
            ours == common::brute_force_class(c.monomials()),
            format!("tree support {t}"),
        )?;
        cases += 1;
        nonempty += 1;
    }
    for _ in 0..500 {
        let k = rng.gen_range(1..=8);
        let masks: BTreeSet<u8> = (0..k).map(|_| rng.gen_range(0..32)).collect();
        let monomials: Vec<Monomial> = masks
            .iter()
            .map(|m| {
                Monomial::from_vars(
                    (0..5)
                        .filter(|i| m & (1 << i) != 0)
                        .map(|i| var(&format!("a{i}"))),
                )
                .unwrap()
            })
            .collect();
        let c = SupportSet::new(monomials.clone()).unwrap();
        let ours = forms(&staged_trees(&c).unwrap());
        if !ours.is_empty() {
            nonempty += 1;
        }
        ensure(
            ours == common::brute_force_class(&monomials),
            format!("support {monomials:?}"),
        )?;
        cases += 1;
    }
    Ok(format!(
        "{cases} instances ({nonempty} with trees), 0 discrepancies"
    ))
}

fn criterion_9() -> Outcome {
    let p = parse_polynomial(fixture("running_example.poly").trim()).unwrap();
    let m = incidence_matrix(&p);
    let csv = incidence_to_csv(&m).map_err(|e| e.to_string())?;
    ensure(
        csv == fixture("running_example.incidence.csv"),
        format!("CSV differs:\n{csv}"),
    )?;

    let displayed = fixture("running_example.displayed_matrix.csv");
    let mut lines = displayed.lines();
    let header: Vec<Monomial> = lines
        .next()
        .unwrap()
        .split(',')
        .skip(1)
        .map(|s| parse_polynomial(s).unwrap().support()[0].clone())
        .collect();
    let mut rows = Vec::new();
    for line in lines {
        let mut cells = line.split(',');
        let x = var(cells.next().unwrap());
        let values: Vec<u32> = cells.map(|c| c.parse().unwrap()).collect();
        for (col, a) in header.iter().zip(&values) {
            ensure(m.get(&x, col) == Some(*a), format!("entry ({x}, {col})"))?;
        }
        rows.push((x, values));
    }
    ensure(
        rows.len() == m.rows().len() && header.len() == m.cols().len(),
        "matrix shape differs",
    )?;
    let sums = m.row_sums();
    let t1 = m.rows().binary_search(&var("t1")).unwrap();
    let t2 = m.rows().binary_search(&var("t2")).unwrap();
    ensure(sums[t1] == 3 && sums[t2] == 5, "root row sums")?;
    let ones = (0..m.cols().len()).all(|j| m.entries()[t1][j] + m.entries()[t2][j] == 1);
    ensure(ones, "rows t1 + t2 are not all ones")?;
    Ok("8x8 matrix matches, t1 + t2 rows sum to ones".into())
}

fn criterion_10() -> Outcome {
    let mut checked = 0;
    for seed in 0..1000u64 {
        let t: EventTree = common::tree_from_seed(seed, 14, false);
        let c = t.interpolating_polynomial();
        if !t.is_staged() || !c.is_square_free() {
            continue;
        }
        ensure(
            c.all_coefficients_one(),
            format!("coefficient above 1 in {t}"),
        )?;
        let root = t.root();
        let labels = t.floret_labels(root);
        for v in t.preorder().into_iter().filter(|&v| v != root) {
            let below = t.subtree(v).interpolating_polynomial().variables();
            ensure(
                labels.iter().all(|x| !below.contains(x)),
                format!("root label below the root in {t}"),
            )?;
        }
        checked += 1;
    }
    ensure(checked >= 500, format!("only {checked} trees"))?;
    Ok(format!("{checked} trees, 0 violations"))
}

type Criterion<'a> = (&'a str, &'a str, Box<dyn Fn() -> Outcome>);

fn main() -> ExitCode {
    let long = std::env::args().any(|a| a == "--long");
    let criteria: Vec<Criterion> = vec![
        (
            "1",
            "running example primes and class",
            Box::new(criterion_1),
        ),
        (
            "2a",
            "four-variable example, staged class",
            Box::new(criterion_2a),
        ),
        (
            "2b",
            "four-variable example with the stage check skipped",
            Box::new(criterion_2b),
        ),
        ("3", "CHDS class", Box::new(criterion_3)),
        (
            "4",
            "independence counts",
            Box::new(move || criterion_4(long)),
        ),
        (
            "5",
            "necessary conditions are not sufficient",
            Box::new(criterion_5),
        ),
        (
            "6",
            "minimal primes against subset search",
            Box::new(criterion_6),
        ),
        ("7", "round-trip completeness", Box::new(criterion_7)),
        ("8", "pruning losslessness", Box::new(criterion_8)),
        ("9", "incidence matrix", Box::new(criterion_9)),
        (
            "10",
            "unit coefficients and root labels",
            Box::new(criterion_10),
        ),
    ];
    let mut failed = false;
    for (id, name, run) in &criteria {
        match std::panic::catch_unwind(std::panic::AssertUnwindSafe(run)) {
            Ok(Ok(detail)) => println!("PASS criterion {id}: {name} ({detail})"),
            Ok(Err(why)) if UNATTAINABLE.contains(id) => {
                println!("FAIL criterion {id}: {name}: {why} [unattainable as stated, see decisions ledger]")
            }
            Ok(Err(why)) => {
                println!("FAIL criterion {id}: {name}: {why}");
                failed = true;
            }
            Err(_) => {
                println!("FAIL criterion {id}: {name}: panicked");
                failed = true;
            }
        }
    }
    if failed {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
