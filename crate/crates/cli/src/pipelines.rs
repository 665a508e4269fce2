//! One pipeline per subcommand. Each returns a finished report; `Err` means
//! the arguments were unusable.

use std::collections::BTreeMap;

use depthforge::depthlie::{bracket_system, relation_kernel, verify_brown_criterion};
use depthforge::eisenstein::{
    bernoulli_numbers, check_prop49_identity, check_prop49_with, delta_qexp, distribution_check,
    eisenstein_qexp, hecke_eigenvalue, hecke_factor, hecke_tp, BernPoly, Entry, FormKind,
    QExpansion,
};
use depthforge::exactla::{format_rational, rat, ratio, Rational};
use depthforge::periodpoly::{check_period_poly, pair_to_poly, period_space};
use depthforge::primes::primes_up_to;
use depthforge::repcalc::{
    bigraded_dims, check_lemma17, irrep_char, tensor_decompose, Character, IrrepLabel,
};
use depthforge::Error;
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::cli::*;
use crate::parse::{parse_labels, parse_poly, parse_rationals};
use crate::report::Report;

type Outcome = Result<Report, String>;

fn lib<T>(r: depthforge::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn q(r: &Rational) -> String {
    format_rational(r)
}

impl WeightRange {
    fn weights(&self, min: u32) -> Result<Vec<u32>, String> {
        match self.weight {
            Some(w) if w < min => Err(format!("weight must be at least {min}, got {w}")),
            Some(w) => Ok(vec![w]),
            None => Ok((min..=self.max_weight).step_by(2).collect()),
        }
    }
}

/// A single case goes to the top level, several go under "cases".
fn add_cases(report: &mut Report, cases: Vec<Value>) {
    if cases.len() == 1 {
        report.extend(cases.into_iter().next().unwrap());
    } else {
        for c in cases {
            report.push_case(c);
        }
    }
}

pub fn run(command: &Command) -> Outcome {
    match command {
        Command::Period(PeriodCmd::Basis(range)) => period_basis(range),
        Command::Period(PeriodCmd::Check { poly }) => period_check(poly),
        Command::Depth(DepthCmd::Relations(range)) => depth_relations(range),
        Command::Depth(DepthCmd::Matrix { weight }) => depth_matrix(*weight),
        Command::Verify(VerifyCmd::Brown(range)) => verify_brown(range),
        Command::Verify(VerifyCmd::Prop49 { k, p }) => verify_prop49(k, p),
        Command::Verify(VerifyCmd::Eigen { weight, p, prec }) => verify_eigen(*weight, p, *prec),
        Command::Verify(VerifyCmd::Lemma17 { factors, n }) => verify_lemma17(factors, *n),
        Command::Eis(EisCmd::Qexp(form)) => eis_qexp(form),
        Command::Eis(EisCmd::Hecke { form, p }) => eis_hecke(form, p),
        Command::Eis(EisCmd::Factor { form, p }) => eis_factor(form, p),
        Command::Rep(RepCmd::Decompose { labels }) => rep_decompose(labels),
        Command::Rep(RepCmd::Bigrade { labels }) => rep_bigrade(labels),
        Command::Bern(BernCmd::Number { n }) => bern_number(*n),
        Command::Bern(BernCmd::Poly { n, x }) => bern_poly(*n, x),
        Command::Bern(BernCmd::Dist { n, m, x }) => bern_dist(*n, *m, x),
    }
}

const PERIOD_REF: &str = "restricted even period polynomials S_w";

fn period_basis(range: &WeightRange) -> Outcome {
    let mut report = Report::new("period basis", PERIOD_REF);
    let mut cases = Vec::new();
    for w in range.weights(4)? {
        cases.push(serde_json::to_value(lib(period_space(w))?).unwrap());
    }
    add_cases(&mut report, cases);
    Ok(report)
}

fn period_check(poly: &str) -> Outcome {
    let f = parse_poly(poly)?;
    let mut report = Report::new("period check", PERIOD_REF);
    report
        .set("weight", f.degree() + 2)
        .set("poly", &f)
        .set("is_period_poly", check_period_poly(&f).is_ok());
    if let Err(cond) = check_period_poly(&f) {
        report.fail(
            serde_json::to_value(cond)
                .unwrap()
                .as_str()
                .unwrap()
                .to_string(),
        );
    }
    Ok(report)
}

const DEPTH_REF: &str =
    "depth-2 Ihara brackets of canonical generators with leading terms ad(e0)^{2m} e1";

fn generator_index(weight: u32) -> Result<u32, String> {
    if weight < 6 {
        return Err(format!("depth-2 brackets start in weight 6, got {weight}"));
    }
    Ok((weight - 2) / 2)
}

fn depth_relations(range: &WeightRange) -> Outcome {
    let mut report = Report::new("depth relations", DEPTH_REF);
    let mut cases = Vec::new();
    for w in range.weights(6)? {
        let kernel = lib(relation_kernel(generator_index(w)?))?;
        let relations: Vec<BTreeMap<String, String>> = kernel
            .iter()
            .map(|c| {
                c.iter()
                    .map(|(&(i, j), a)| (format!("{i},{j}"), q(a)))
                    .collect()
            })
            .collect();
        let images: Vec<_> = kernel.iter().map(pair_to_poly).collect();
        cases.push(
            json!({ "weight": w, "dim": kernel.len(), "relations": relations, "images": images }),
        );
    }
    add_cases(&mut report, cases);
    Ok(report)
}

fn depth_matrix(weight: u32) -> Outcome {
    let sys = lib(bracket_system(generator_index(weight)?))?;
    let mut report = Report::new("depth matrix", DEPTH_REF);
    let pairs: Vec<[u32; 2]> = sys.pairs.iter().map(|&(i, j)| [i, j]).collect();
    let rows: Vec<String> = sys.rows.iter().map(|w| w.to_string()).collect();
    report
        .set("weight", weight)
        .set("pairs", pairs)
        .set("rows", rows)
        .set("rank", sys.matrix.rank())
        .set("matrix", &sys.matrix);
    Ok(report)
}

fn verify_brown(range: &WeightRange) -> Outcome {
    let mut report = Report::new(
        "verify brown",
        "bracket relations among canonical generators versus restricted even period polynomials",
    );
    let mut cases = Vec::new();
    for w in range.weights(6)? {
        let r = lib(verify_brown_criterion(generator_index(w)?))?;
        if !r.holds() {
            report.fail(format!(
                "weight {w}: kernel_dim {} period_dim {} in_space {} spans {}",
                r.kernel_dim, r.period_dim, r.in_space, r.spans
            ));
        }
        cases.push(json!({
            "weight": r.weight,
            "pairs": r.pairs,
            "kernel_dim": r.kernel_dim,
            "period_dim": r.period_dim,
            "in_space": r.in_space,
            "spans": r.spans,
            "match": r.holds(),
        }));
    }
    add_cases(&mut report, cases);
    Ok(report)
}

fn verify_prop49(ks: &[u32], ps: &[u64]) -> Outcome {
    let ks = if ks.is_empty() {
        vec![2, 4, 6]
    } else {
        ks.to_vec()
    };
    let ps = if ps.is_empty() {
        vec![3, 5, 7]
    } else {
        ps.to_vec()
    };
    let mut report = Report::new(
        "verify prop49",
        "Bernoulli-sum evaluation of the coset functions on GL2(F_p)",
    );
    let mut cases = Vec::new();
    for &k in &ks {
        for &p in &ps {
            let d = lib(check_prop49_identity(k, p))?;
            let c = lib(check_prop49_with(k, p, Entry::C))?;
            if let Some(g) = d.first_failure {
                report.fail(format!("k={k} p={p}: fails at {g:?}"));
            }
            cases.push(json!({
                "k": k,
                "p": p,
                "matrices_checked": d.matrices_checked,
                "holds": d.holds(),
                "failure_matrix": d.first_failure,
                "entry_c_holds": c.holds(),
                "entry_c_failure_matrix": c.first_failure,
            }));
        }
    }
    add_cases(&mut report, cases);
    Ok(report)
}

fn eisenstein_eigenvalue(w: u32, p: u64) -> Rational {
    Rational::from_integer(BigInt::from(1) + BigInt::from(p).pow(w - 1))
}

fn verify_eigen(weight: Option<u32>, ps: &[u64], prec: usize) -> Outcome {
    let weights: Vec<u32> = match weight {
        Some(w) => vec![w],
        None => (4..=14).step_by(2).collect(),
    };
    let ps = if ps.is_empty() {
        vec![2, 3, 5]
    } else {
        ps.to_vec()
    };
    let mut report = Report::new(
        "verify eigen",
        "Eisenstein series are T_p-eigenforms with eigenvalue 1 + p^{w-1}",
    );
    let mut cases = Vec::new();
    for &w in &weights {
        let e = lib(eisenstein_qexp(w, prec))?;
        for &p in &ps {
            let t = lib(hecke_tp(&e, p))?;
            let expected = eisenstein_eigenvalue(w, p);
            let holds = t == e.truncate(t.prec).scale(&expected);
            if !holds {
                report.fail(format!("weight {w} p {p}"));
            }
            cases.push(json!({
                "weight": w,
                "p": p,
                "prec": t.prec,
                "expected": q(&expected),
                "match": holds,
            }));
        }
    }
    add_cases(&mut report, cases);
    Ok(report)
}

fn verify_lemma17(factors: &[String], n: Option<u32>) -> Outcome {
    let labels = parse_labels(factors)?;
    let top: u32 = labels.iter().map(|l| l.u).sum();
    let ns: Vec<u32> = match n {
        Some(n) => vec![n],
        None => (0..=top / 2 + 1).collect(),
    };
    let mut report = Report::new(
        "verify lemma17",
        "Clebsch-Gordan shape of tensor products of twisted symmetric powers",
    );
    report.set("factors", &labels);
    let mut cases = Vec::new();
    for n in ns {
        let c = lib(check_lemma17(n, &labels))?;
        if !c.holds() {
            report.fail(format!(
                "n={n}: target_absent {} all_shifted {}",
                c.target_absent, c.all_shifted
            ));
        }
        cases.push(json!({
            "n": n,
            "target": IrrepLabel::new(2 * n, 2 * n as i64 + 1),
            "target_absent": c.target_absent,
            "all_shifted": c.all_shifted,
            "components": c.components,
        }));
    }
    add_cases(&mut report, cases);
    Ok(report)
}

fn build_form(form: &FormArgs) -> Result<(QExpansion, FormKind), String> {
    match form.form {
        Form::Eisenstein => Ok((
            lib(eisenstein_qexp(form.weight, form.prec))?,
            FormKind::Eisenstein,
        )),
        Form::Delta if form.weight == 12 => Ok((lib(delta_qexp(form.prec))?, FormKind::Cusp)),
        Form::Delta => Err(format!("Delta has weight 12, got --weight {}", form.weight)),
    }
}

fn form_name(form: Form) -> &'static str {
    match form {
        Form::Eisenstein => "eisenstein",
        Form::Delta => "delta",
    }
}

fn eis_qexp(form: &FormArgs) -> Outcome {
    let (f, _) = build_form(form)?;
    let mut report = Report::new(
        "eis qexp",
        "level-one q-expansions: Eisenstein series and Delta",
    );
    report
        .set("weight", f.weight)
        .set("form", form_name(form.form))
        .set("prec", f.prec)
        .set("coeffs", f.coeffs().iter().map(q).collect::<Vec<_>>());
    Ok(report)
}

fn eis_hecke(form: &FormArgs, ps: &[u64]) -> Outcome {
    let (f, kind) = build_form(form)?;
    let ps = if ps.is_empty() {
        vec![2, 3, 5]
    } else {
        ps.to_vec()
    };
    let mut report = Report::new("eis hecke", "Hecke operators T_p on level-one q-expansions");
    report
        .set("weight", f.weight)
        .set("form", form_name(form.form))
        .set("prec", f.prec);
    let mut cases = Vec::new();
    for p in ps {
        let lambda = match hecke_eigenvalue(&f, p) {
            Ok(l) => Some(l),
            Err(Error::NotEigenform { .. }) => None,
            Err(e) => return Err(e.to_string()),
        };
        let mut case = json!({ "p": p, "eigenvalue": lambda.as_ref().map(q) });
        if kind == FormKind::Eisenstein {
            let expected = eisenstein_eigenvalue(f.weight, p);
            let holds = lambda.as_ref() == Some(&expected);
            case["expected"] = q(&expected).into();
            case["match"] = holds.into();
            if !holds {
                report.fail(format!(
                    "p {p}: eigenvalue differs from 1 + p^{}",
                    f.weight - 1
                ));
            }
        }
        if lambda.is_none() {
            report.fail(format!("p {p}: not an eigenform to this precision"));
        }
        cases.push(case);
    }
    add_cases(&mut report, cases);
    Ok(report)
}

fn eis_factor(form: &FormArgs, ps: &[u64]) -> Outcome {
    let (f, kind) = build_form(form)?;
    let m = (f.weight - 2) / 2;
    let ps = if ps.is_empty() {
        primes_up_to(form.prec as u64 / 2)
    } else {
        ps.to_vec()
    };
    let mut report = Report::new(
        "eis factor",
        "invertibility of 1 - T_p + p^{2m+1} on level-one cusp forms",
    );
    report
        .set("weight", f.weight)
        .set("form", form_name(form.form))
        .set("prec", f.prec);
    let mut cases = Vec::new();
    for p in ps {
        let h = lib(hecke_factor(&f, p, m, kind))?;
        if kind == FormKind::Cusp {
            if !h.nonzero() {
                report.fail(format!("p {p}: factor vanishes"));
            }
            if h.weil_bound == Some(false) {
                report.fail(format!("p {p}: a_p^2 >= 4 p^{}", 2 * m + 1));
            }
        }
        cases.push(json!({
            "p": p,
            "eigenvalue": q(&h.eigenvalue),
            "factor": q(&h.factor),
            "nonzero": h.nonzero(),
            "weil_bound": h.weil_bound,
        }));
    }
    add_cases(&mut report, cases);
    Ok(report)
}

const REP_REF: &str = "GL2 torus characters and Clebsch-Gordan decomposition";

fn product_character(labels: &[IrrepLabel]) -> Character {
    labels
        .iter()
        .fold(Character::one(), |acc, &l| acc.mul(&irrep_char(l)))
}

fn rep_decompose(labels: &[String]) -> Outcome {
    let labels = parse_labels(labels)?;
    let dec = lib(tensor_decompose(&labels))?;
    let mut report = Report::new("rep decompose", REP_REF);
    report
        .set("factors", &labels)
        .set("dimension", product_character(&labels).degree())
        .set("components", &dec);
    Ok(report)
}

fn rep_bigrade(labels: &[String]) -> Outcome {
    let labels = parse_labels(labels)?;
    let dims = lib(bigraded_dims(&product_character(&labels)))?;
    let mut report = Report::new("rep bigrade", REP_REF);
    report.set("factors", &labels);
    for ((two_s, t), dim) in dims {
        report.push_case(json!({ "two_s": two_s, "t": t, "dim": dim }));
    }
    Ok(report)
}

const BERN_REF: &str = "Bernoulli numbers (B_1 = -1/2), polynomials and the distribution relation";

fn bern_number(n: usize) -> Outcome {
    let mut report = Report::new("bern number", BERN_REF);
    for (i, b) in bernoulli_numbers(n).iter().enumerate() {
        report.push_case(json!({ "n": i, "value": q(b) }));
    }
    Ok(report)
}

fn bern_poly(n: usize, xs: &[String]) -> Outcome {
    let b = BernPoly::new(n);
    let mut report = Report::new("bern poly", BERN_REF);
    report
        .set("n", n)
        .set("coeffs", b.coeffs().iter().map(q).collect::<Vec<_>>());
    for x in parse_rationals(xs)? {
        report.push_case(json!({ "x": q(&x), "value": q(&b.eval(&x)) }));
    }
    Ok(report)
}

fn bern_dist(n_max: usize, m_max: u64, xs: &[String]) -> Outcome {
    let xs = if xs.is_empty() {
        vec![rat(0), ratio(1, 2), ratio(1, 3), ratio(2, 7)]
    } else {
        parse_rationals(xs)?
    };
    let mut report = Report::new("bern dist", BERN_REF);
    for n in 0..=n_max {
        for m in 1..=m_max {
            for x in &xs {
                let holds = distribution_check(n, m, x);
                if !holds {
                    report.fail(format!("n={n} m={m} x={}", q(x)));
                }
                report.push_case(json!({ "n": n, "m": m, "x": q(x), "holds": holds }));
            }
        }
    }
    Ok(report)
}
