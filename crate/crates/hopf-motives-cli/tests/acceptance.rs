//! Acceptance gate for the whole workspace.
//!
//! Each criterion below must hold exactly — point counts are integers and
//! the formulas are claimed to be identities, so there is no tolerance
//! anywhere.  The test prints one PASS/FAIL line per criterion and fails
//! if any criterion does.

use std::fmt::Write as _;
use std::process::Command;
use std::time::Instant;

use hopf_motives::count::{
    count_omega, count_quotient, count_rep_agl1, count_rep_agl2, count_rep_gl2, count_twisted,
    model_equiv_motive, verify_sl_gl_descent, QuotientModel, Strategy, MAX_NAIVE_P,
    QUOTIENT_MODELS,
};
use hopf_motives::family::{self, FamilyId};
use hopf_motives::ff::{gl2_elements, twist_rank, Mat, PrimeField, MAT_ID};
use hopf_motives::jordan::StratumId;
use hopf_motives::poly::MotivePoly;

/// The verification grid: every admissible pair with two primes per twist
/// exponent where they exist below the class-based bound.
const GRID: [(u32, u64); 13] = [
    (1, 3),
    (1, 5),
    (1, 7),
    (2, 3),
    (2, 5),
    (2, 7),
    (3, 7),
    (3, 13),
    (4, 5),
    (4, 13),
    (5, 11),
    (6, 7),
    (6, 13),
];

fn motive_at(family: FamilyId, n: u32, p: u64) -> i128 {
    family::motive(family, n)
        .unwrap()
        .eval(i128::from(p))
        .unwrap()
}

fn check(errors: &mut String, ok: bool, what: impl Fn() -> String) {
    if !ok {
        let _ = writeln!(errors, "  {}", what());
    }
}

fn done(errors: String) -> Result<(), String> {
    if errors.is_empty() {
        Ok(())
    } else {
        Err(format!("\n{errors}"))
    }
}

/// Criterion: the polynomial identity suite holds for n = 1..64, fast.
fn identity_suite() -> Result<(), String> {
    let start = Instant::now();
    let mut errors = String::new();
    for n in 1..=64 {
        for identity in family::check_identities(n).map_err(|e| e.to_string())? {
            check(&mut errors, identity.holds, || {
                format!("identity {} fails at n={n}", identity.name)
            });
        }
    }
    let elapsed = start.elapsed();
    check(&mut errors, elapsed.as_secs() < 1, || {
        format!("identity suite took {elapsed:?}, budget is 1s")
    });
    done(errors)
}

/// Criterion: every closed formula counts points exactly on the grid.
fn formula_vs_count_grid() -> Result<(), String> {
    let mut errors = String::new();
    for (n, p) in GRID {
        let gl2 = count_rep_gl2(n, p, Strategy::ClassBased).map_err(|e| e.to_string())?;
        check(
            &mut errors,
            gl2.total == motive_at(FamilyId::RepGl2Total, n, p),
            || format!("rep_gl2_total n={n} p={p}: {} vs formula", gl2.total),
        );
        for sid in StratumId::ALL {
            let counted = gl2.strata[sid.index()];
            check(
                &mut errors,
                counted == motive_at(FamilyId::RepGl2Stratum(sid), n, p),
                || format!("rep_gl2_stratum:{sid} n={n} p={p}: {counted} vs formula"),
            );
        }
        check(
            &mut errors,
            gl2.irreducible == motive_at(FamilyId::RepGl2Irr, n, p),
            || format!("rep_gl2_irr n={n} p={p}"),
        );
        check(
            &mut errors,
            gl2.reducible == motive_at(FamilyId::RepGl2Red, n, p),
            || format!("rep_gl2_red n={n} p={p}"),
        );

        let agl1 = count_rep_agl1(n, p).map_err(|e| e.to_string())?;
        check(
            &mut errors,
            agl1.total == motive_at(FamilyId::RepAgl1Total, n, p),
            || format!("rep_agl1_total n={n} p={p}"),
        );
        for i in 0..3u8 {
            check(
                &mut errors,
                agl1.substrata[usize::from(i)] == motive_at(FamilyId::RepAgl1Sub(i), n, p),
                || format!("rep_agl1_sub:{i} n={n} p={p}"),
            );
        }

        let agl2 = count_rep_agl2(n, p, Strategy::ClassBased).map_err(|e| e.to_string())?;
        check(
            &mut errors,
            agl2.total == motive_at(FamilyId::RepAgl2Total, n, p),
            || format!("rep_agl2_total n={n} p={p}"),
        );
        for sid in StratumId::ALL {
            check(
                &mut errors,
                agl2.strata[sid.index()] == motive_at(FamilyId::RepAgl2Stratum(sid), n, p),
                || format!("rep_agl2_stratum:{sid} n={n} p={p}"),
            );
            for i in 0..3u8 {
                check(
                    &mut errors,
                    agl2.substrata[sid.index()][usize::from(i)]
                        == motive_at(FamilyId::RepAgl2Sub(sid, i), n, p),
                    || format!("rep_agl2_sub:{sid}:{i} n={n} p={p}"),
                );
            }
        }

        let red = count_quotient(QuotientModel::CharRedModel, n, p).map_err(|e| e.to_string())?;
        let irr = count_quotient(QuotientModel::CharIrrModel, n, p).map_err(|e| e.to_string())?;
        check(
            &mut errors,
            red == motive_at(FamilyId::CharGl2Red, n, p),
            || format!("char_gl2_red n={n} p={p}"),
        );
        check(
            &mut errors,
            irr == motive_at(FamilyId::CharGl2Irr, n, p),
            || format!("char_gl2_irr n={n} p={p}"),
        );
        check(
            &mut errors,
            red + irr == motive_at(FamilyId::CharGl2Total, n, p),
            || format!("char_gl2_total n={n} p={p}"),
        );
    }
    for p in [2u64, 3, 5, 7, 11, 13] {
        let counted = count_omega(p).map_err(|e| e.to_string())?;
        check(
            &mut errors,
            counted == motive_at(FamilyId::Omega, 1, p),
            || format!("omega p={p}: counted {counted}"),
        );
    }
    done(errors)
}

/// Criterion: the one prime outside the admissible range that still makes
/// sense — plain commuting pairs in GL₂(F₂) — matches the n = 1 formula.
fn gl2_f2_smoke() -> Result<(), String> {
    let mut errors = String::new();
    let counts = count_rep_gl2(1, 2, Strategy::Naive).map_err(|e| e.to_string())?;
    check(&mut errors, counts.total == 18, || {
        format!("GL₂(F₂) commuting pairs: {}", counts.total)
    });
    check(
        &mut errors,
        counts.total == motive_at(FamilyId::RepGl2Total, 1, 2),
        || "rep_gl2_total at q=2".into(),
    );
    done(errors)
}

/// Criterion: every quotient model matches its equivariant motive in all
/// three projections, at every admissible cell with p ≤ 5.
fn twisted_model_suite() -> Result<(), String> {
    let mut errors = String::new();
    for (n, p) in [(1u32, 3u64), (1, 5), (2, 3), (2, 5), (4, 5)] {
        for model in QUOTIENT_MODELS {
            let counted = count_twisted(model, n, p).map_err(|e| e.to_string())?;
            let proj = model_equiv_motive(model, n)
                .and_then(|m| m.project())
                .map_err(|e| e.to_string())?;
            let q = i128::from(p);
            check(
                &mut errors,
                counted.plain == proj.plain.eval(q).unwrap(),
                || format!("{model} plain n={n} p={p}: {}", counted.plain),
            );
            check(
                &mut errors,
                counted.twisted == proj.twisted.eval(q).unwrap(),
                || format!("{model} twisted n={n} p={p}: {}", counted.twisted),
            );
            let quotient = count_quotient(model, n, p).map_err(|e| e.to_string())?;
            check(
                &mut errors,
                quotient == proj.quotient.eval(q).unwrap(),
                || format!("{model} quotient n={n} p={p}: {quotient}"),
            );
        }
    }
    // Frozen reference values, derived by hand from the model definitions.
    let torus = count_twisted(QuotientModel::Torus2Swap, 2, 3).unwrap();
    check(&mut errors, (torus.plain, torus.twisted) == (4, 8), || {
        format!("torus2_swap at p=3: ({}, {})", torus.plain, torus.twisted)
    });
    let red = count_quotient(QuotientModel::CharRedModel, 1, 3).unwrap();
    check(&mut errors, red == 40, || {
        format!("char_red_model quotient at p=3: {red}")
    });
    let irr = count_quotient(QuotientModel::CharIrrModel, 2, 3).unwrap();
    check(&mut errors, irr == 24, || {
        format!("char_irr_model quotient at (2,3): {irr}")
    });
    done(errors)
}

/// Criterion: the μ₂ × μ₂ sector descent reproduces the GL₂ counts.
fn sl_gl_descent() -> Result<(), String> {
    let mut errors = String::new();
    for (n, p) in [(1u32, 3u64), (2, 3), (2, 5), (4, 5)] {
        let report = verify_sl_gl_descent(n, p).map_err(|e| e.to_string())?;
        check(&mut errors, report.matches(), || {
            format!(
                "descent n={n} p={p}: descent {} vs direct {}",
                report.descent_total, report.gl2_total
            )
        });
        check(
            &mut errors,
            report.descent_total == motive_at(FamilyId::RepGl2Total, n, p),
            || format!("descent n={n} p={p} vs formula"),
        );
    }
    done(errors)
}

struct Rng(u64);

impl Rng {
    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }
}

/// Criterion: the structural properties the counts rely on, sampled
/// deterministically: conjugation invariance of the twist rank, the
/// telescoping identity for geometric sums of matrices, agreement of the
/// two enumeration strategies, and evaluation being a ring homomorphism.
fn structural_properties() -> Result<(), String> {
    let mut errors = String::new();
    let mut rng = Rng(42);

    for p in [3u64, 5] {
        let fp = PrimeField::new(p).unwrap();
        let group = gl2_elements(&fp);
        let inverse = |m: Mat| -> Mat {
            let di = fp.inv(fp.mat_det(m)).unwrap();
            [
                fp.mul(di, m[3]),
                fp.mul(di, fp.neg(m[1])),
                fp.mul(di, fp.neg(m[2])),
                fp.mul(di, m[0]),
            ]
        };
        for _ in 0..120 {
            let mat = |rng: &mut Rng| -> Mat {
                [
                    rng.next() % p,
                    rng.next() % p,
                    rng.next() % p,
                    rng.next() % p,
                ]
            };
            let a = mat(&mut rng);
            let b = mat(&mut rng);
            let g = group[(rng.next() % group.len() as u64) as usize];
            let gi = inverse(g);
            let n = 1 + (rng.next() % 4) as u32;
            let ca = fp.mat_mul(fp.mat_mul(g, a), gi);
            let cb = fp.mat_mul(fp.mat_mul(g, b), gi);
            check(
                &mut errors,
                twist_rank(&fp, a, b, n) == twist_rank(&fp, ca, cb, n),
                || format!("rank not conjugation invariant at p={p}, A={a:?}, B={b:?}"),
            );
        }
    }

    let mut telescoped = 0usize;
    for p in [3u64, 5, 7, 11, 13] {
        let fp = PrimeField::new(p).unwrap();
        for _ in 0..40 {
            let a = [
                rng.next() % p,
                rng.next() % p,
                rng.next() % p,
                rng.next() % p,
            ];
            for n in 1..=6 {
                let lhs = fp.mat_mul(fp.mat_sub(a, MAT_ID), fp.mat_phi(a, n));
                let rhs = fp.mat_sub(fp.mat_pow(a, n), MAT_ID);
                check(&mut errors, lhs == rhs, || {
                    format!("telescoping fails at p={p}, n={n}, A={a:?}")
                });
                telescoped += 1;
            }
        }
    }
    check(&mut errors, telescoped >= 1000, || {
        format!("only {telescoped} telescoping samples")
    });

    for (n, p) in GRID.iter().copied().filter(|&(_, p)| p <= MAX_NAIVE_P) {
        let gl2_naive = count_rep_gl2(n, p, Strategy::Naive).map_err(|e| e.to_string())?;
        let gl2_class = count_rep_gl2(n, p, Strategy::ClassBased).map_err(|e| e.to_string())?;
        check(&mut errors, gl2_naive == gl2_class, || {
            format!("GL₂ strategies disagree at n={n} p={p}")
        });
        let agl2_naive = count_rep_agl2(n, p, Strategy::Naive).map_err(|e| e.to_string())?;
        let agl2_class = count_rep_agl2(n, p, Strategy::ClassBased).map_err(|e| e.to_string())?;
        check(&mut errors, agl2_naive == agl2_class, || {
            format!("AGL₂ strategies disagree at n={n} p={p}")
        });
    }

    for _ in 0..500 {
        let coeffs = |rng: &mut Rng| -> Vec<i128> {
            (0..(rng.next() % 5))
                .map(|_| (rng.next() % 41) as i128 - 20)
                .collect()
        };
        let a = MotivePoly::from_coeffs(&coeffs(&mut rng));
        let b = MotivePoly::from_coeffs(&coeffs(&mut rng));
        let x = (rng.next() % 101) as i128 - 50;
        check(
            &mut errors,
            a.mul(&b).unwrap().eval(x).unwrap() == a.eval(x).unwrap() * b.eval(x).unwrap(),
            || format!("eval not multiplicative for {a}, {b} at {x}"),
        );
        check(
            &mut errors,
            a.add(&b).unwrap().eval(x).unwrap() == a.eval(x).unwrap() + b.eval(x).unwrap(),
            || format!("eval not additive for {a}, {b} at {x}"),
        );
    }
    done(errors)
}

fn run_cli(args: &[&str]) -> Result<(String, String), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_hopf-motives"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!(
            "cli {args:?} exited with {:?}: {}",
            out.status.code(),
            String::from_utf8_lossy(&out.stderr)
        ));
    }
    Ok((
        String::from_utf8(out.stdout).map_err(|e| e.to_string())?,
        String::from_utf8(out.stderr).map_err(|e| e.to_string())?,
    ))
}

fn strip_elapsed(json_lines: &str) -> Vec<serde_json::Value> {
    json_lines
        .lines()
        .map(|line| {
            let mut v: serde_json::Value = serde_json::from_str(line).expect("json line");
            v.as_object_mut().expect("object").remove("elapsed_ms");
            v
        })
        .collect()
}

/// Criterion: the CLI's verification output is deterministic, including
/// under different worker counts.
fn cli_determinism() -> Result<(), String> {
    let mut errors = String::new();
    let args = ["verify", "--family", "all", "--n", "1..2", "--primes", "3"];
    let (first, _) = run_cli(&args)?;
    let (second, _) = run_cli(&args)?;
    check(&mut errors, first == second, || {
        "text output differs between identical runs".into()
    });
    check(&mut errors, first.contains("0 mismatches"), || {
        format!("unexpected mismatch in: {first}")
    });

    let json_args = |jobs: &'static str| {
        [
            "verify", "--family", "all", "--n", "1..2", "--primes", "3", "--format", "json",
            "--jobs", jobs,
        ]
    };
    let (serial, _) = run_cli(&json_args("1"))?;
    let (parallel, _) = run_cli(&json_args("4"))?;
    check(
        &mut errors,
        strip_elapsed(&serial) == strip_elapsed(&parallel),
        || "json output depends on worker count".into(),
    );
    done(errors)
}

type Criterion = (&'static str, fn() -> Result<(), String>);

#[test]
fn acceptance() {
    let criteria: [Criterion; 7] = [
        ("identity_suite_n_1_to_64", identity_suite),
        ("formula_vs_count_grid", formula_vs_count_grid),
        ("gl2_f2_smoke", gl2_f2_smoke),
        ("twisted_model_suite", twisted_model_suite),
        ("sl_gl_descent", sl_gl_descent),
        ("structural_properties", structural_properties),
        ("cli_determinism", cli_determinism),
    ];
    let mut failures = Vec::new();
    for (name, criterion) in criteria {
        match criterion() {
            Ok(()) => println!("PASS {name}"),
            Err(reason) => {
                println!("FAIL {name}: {reason}");
                failures.push(name);
            }
        }
    }
    assert!(failures.is_empty(), "failed criteria: {failures:?}");
}
