use std::sync::Arc;
use std::time::Instant;

use serde::Serialize;

use grslice_core::certify::{certify_reduced, Certificate, CertifyError, CertifyOptions, DEFAULT_MINOR_CAP};
use grslice_core::groebner::GroebnerError;
use grslice_core::lattice::{
    dim_orbit, generate_closure, is_integral_two_adjacent, meet, parse_coords, Coweight, LatticeError, RootDatum,
    TriangleEnvelope, TriangleFunction,
};
use grslice_core::poisson::{
    compare_ideals_mu_zero, lemma_labels, verify_axioms, verify_lemma_bracket_f, verify_minor_bracket_identity,
    AxiomSampling, DualAction, GroupChart, MinorLabel, PoissonConfig, PoissonError, VerificationRecord,
};
use grslice_core::slice::slice_generators;
use grslice_core::Rational;

use crate::exit;
use crate::output::{fail, join, print_json, Format};
use crate::{CertifyArgs, LatticeCommand, PoissonCommand, SizeArgs};

fn check_size(n: usize, k: usize) -> Result<(), u8> {
    if n < 2 || k < 1 {
        return Err(fail(exit::USAGE, format!("need n >= 2 and k >= 1, got n = {n}, k = {k}")));
    }
    Ok(())
}

#[derive(Serialize)]
struct GeneratorsReport {
    n: usize,
    k: usize,
    ambient_dim: usize,
    expected_dim: usize,
    generator_count: usize,
    generators: Vec<String>,
}

pub fn generators(args: &SizeArgs, format: Format) -> u8 {
    let (n, k) = (args.n, args.k);
    if let Err(code) = check_size(n, k) {
        return code;
    }
    let gens = match slice_generators(n, k) {
        Ok(g) => g,
        Err(e) => return fail(exit::USAGE, e),
    };
    let report = GeneratorsReport {
        n,
        k,
        ambient_dim: k * n * n,
        expected_dim: k * n * (n - 1),
        generator_count: gens.len(),
        generators: gens.iter().map(ToString::to_string).collect(),
    };
    match format {
        Format::Json => print_json(&report),
        Format::Text => {
            println!("n = {n}, k = {k}");
            println!("ambient dimension: {}", report.ambient_dim);
            println!("expected dimension: {}", report.expected_dim);
            println!("generators: {}", report.generator_count);
            for (r, g) in report.generators.iter().enumerate() {
                println!("det^({}) = {g}", r + 1);
            }
        }
    }
    exit::OK
}

#[derive(Serialize, Clone, Copy, PartialEq, Eq, Debug)]
enum CertifyStatus {
    Certified,
    NotCertified,
    BudgetExceeded,
    MinorExplosion,
    Error,
}

#[derive(Serialize)]
struct CertifyReport {
    n: usize,
    k: usize,
    status: CertifyStatus,
    certificate: Option<Certificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    wall_time_ms: Option<u64>,
}

impl CertifyReport {
    fn exit_code(&self) -> u8 {
        if self.status == CertifyStatus::Certified {
            exit::OK
        } else {
            exit::CERTIFICATE
        }
    }

    fn print_text(&self) {
        println!("n = {}, k = {}: {:?}", self.n, self.k, self.status);
        if let Some(e) = &self.error {
            println!("error: {e}");
        }
        if let Some(c) = &self.certificate {
            let opt = |v: Option<i64>| v.map_or("-".to_string(), |d| d.to_string());
            println!("ambient dimension: {}", c.ambient_dim);
            println!("generators: {}", c.generator_count);
            println!("variety dimension: {}", opt(c.variety_dim));
            println!("complete intersection: {}", c.is_complete_intersection);
            println!("singular locus dimension: {}", opt(c.singular_locus_dim));
            println!("reduced: {}", c.is_reduced_certified);
            if let Some(td) = c.tangent_dim {
                println!("tangent dimension: {td}");
            }
            if let Some(point) = &c.tangent_point {
                for (s, m) in point.iter().enumerate() {
                    let rows: Vec<String> = m.iter().map(|row| format!("[{}]", join(row, ", "))).collect();
                    println!("X^({}) = [{}]", s + 1, rows.join(", "));
                }
            }
            let st = &c.stats;
            println!("s-pairs reduced (dimension): {}", st.dimension.spairs_reduced);
            if let Some(sl) = &st.singular_locus {
                println!("s-pairs reduced (singular locus): {}", sl.spairs_reduced);
            }
            println!("jacobian minors: {}", st.jacobian_minors);
        }
        if let Some(ms) = self.wall_time_ms {
            println!("wall time: {ms} ms");
        }
    }
}

fn certify_one(n: usize, k: usize, opts: &CertifyOptions, timing: bool) -> CertifyReport {
    let start = Instant::now();
    let result = certify_reduced(n, k, opts);
    let wall_time_ms = timing.then(|| start.elapsed().as_millis() as u64);
    let (status, certificate, error) = match result {
        Ok(c) if c.is_reduced_certified => (CertifyStatus::Certified, Some(c), None),
        Ok(c) => (CertifyStatus::NotCertified, Some(c), None),
        Err(e) => {
            let status = match e {
                CertifyError::BudgetExceeded { .. } => CertifyStatus::BudgetExceeded,
                CertifyError::MinorExplosion { .. } => CertifyStatus::MinorExplosion,
                _ => CertifyStatus::Error,
            };
            (status, e.partial().cloned(), Some(e.to_string()))
        }
    };
    CertifyReport { n, k, status, certificate, error, wall_time_ms }
}

fn parse_batch(text: &str) -> Result<Vec<(usize, usize)>, String> {
    text.split(',')
        .map(|item| {
            let (n, k) = item.trim().split_once(':').ok_or_else(|| format!("batch entry `{item}` is not n:k"))?;
            let parse = |s: &str| s.trim().parse::<usize>().map_err(|_| format!("batch entry `{item}` is not n:k"));
            Ok((parse(n)?, parse(k)?))
        })
        .collect()
}

pub fn certify(args: &CertifyArgs, format: Format) -> u8 {
    let instances = match (&args.batch, args.n, args.k) {
        (Some(b), _, _) => match parse_batch(b) {
            Ok(v) if !v.is_empty() => v,
            Ok(_) => return fail(exit::USAGE, "empty batch"),
            Err(e) => return fail(exit::USAGE, e),
        },
        (None, Some(n), Some(k)) => vec![(n, k)],
        _ => return fail(exit::USAGE, "need --n and --k, or --batch"),
    };
    for &(n, k) in &instances {
        if let Err(code) = check_size(n, k) {
            return code;
        }
    }
    let opts = CertifyOptions {
        budget: args.budget.budget(),
        minor_cap: args.minor_cap.unwrap_or(DEFAULT_MINOR_CAP),
        smooth_point: !args.no_smooth_point,
        seed: args.seed,
        ..Default::default()
    };
    let reports: Vec<CertifyReport> = std::thread::scope(|scope| {
        let handles: Vec<_> = instances
            .iter()
            .map(|&(n, k)| {
                let opts = &opts;
                scope.spawn(move || certify_one(n, k, opts, args.timing))
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("certificate worker panicked")).collect()
    });
    let code = reports.iter().map(CertifyReport::exit_code).max().unwrap_or(exit::OK);
    match (format, args.batch.is_some()) {
        (Format::Json, true) => print_json(&reports),
        (Format::Json, false) => print_json(&reports[0]),
        (Format::Text, _) => {
            for (idx, r) in reports.iter().enumerate() {
                if idx > 0 {
                    println!();
                }
                r.print_text();
            }
        }
    }
    code
}

fn lattice_code(e: &LatticeError) -> u8 {
    match e {
        LatticeError::Malformed(_) | LatticeError::DimensionMismatch { .. } => exit::USAGE,
        _ => exit::LATTICE,
    }
}

fn datum(n: usize) -> Result<Arc<RootDatum>, u8> {
    if n < 2 {
        return Err(fail(exit::USAGE, format!("need n >= 2, got {n}")));
    }
    Ok(RootDatum::sl(n))
}

fn coweight(d: &Arc<RootDatum>, text: &str) -> Result<Coweight, u8> {
    Coweight::parse(d, text).map_err(|e| fail(lattice_code(&e), e))
}

#[derive(Serialize)]
struct ClosureElement {
    coweight: Coweight,
    two_adjacent: bool,
}

#[derive(Serialize)]
struct LatticeReport<T: Serialize> {
    operation: &'static str,
    n: usize,
    inputs: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    bound: Option<i64>,
    result: T,
}

fn emit<T: Serialize>(format: Format, report: LatticeReport<T>, text: impl FnOnce(&T)) -> u8 {
    match format {
        Format::Json => print_json(&report),
        Format::Text => text(&report.result),
    }
    exit::OK
}

fn coords(c: &Coweight) -> Vec<String> {
    c.coords().iter().map(ToString::to_string).collect()
}

pub fn lattice(cmd: &LatticeCommand, format: Format) -> u8 {
    match run_lattice(cmd, format) {
        Ok(code) | Err(code) => code,
    }
}

fn run_lattice(cmd: &LatticeCommand, format: Format) -> Result<u8, u8> {
    Ok(match cmd {
        LatticeCommand::Meet { n, a, b } => {
            let d = datum(*n)?;
            let (x, y) = (coweight(&d, a)?, coweight(&d, b)?);
            let m = meet(&x, &y).map_err(|e| fail(lattice_code(&e), e))?;
            let report = LatticeReport { operation: "meet", n: *n, inputs: vec![coords(&x), coords(&y)], bound: None, result: m };
            emit(format, report, |m| println!("{m}"))
        }
        LatticeCommand::Dim { n, a } => {
            let d = datum(*n)?;
            let x = coweight(&d, a)?;
            let dim = dim_orbit(&x).map_err(|e| fail(lattice_code(&e), e))?;
            let report = LatticeReport { operation: "dim", n: *n, inputs: vec![coords(&x)], bound: None, result: dim };
            emit(format, report, |d| println!("{d}"))
        }
        LatticeCommand::Closure { n, seeds, bound } => {
            let d = datum(*n)?;
            let seeds: Vec<Coweight> = seeds.split(';').map(|s| coweight(&d, s)).collect::<Result<_, _>>()?;
            let elements: Vec<ClosureElement> = generate_closure(&seeds, *bound)
                .into_iter()
                .map(|c| ClosureElement { two_adjacent: is_integral_two_adjacent(&c), coweight: c })
                .collect();
            let inputs = seeds.iter().map(coords).collect();
            let report = LatticeReport { operation: "closure", n: *n, inputs, bound: Some(*bound), result: elements };
            emit(format, report, |els| {
                for e in els {
                    let tag = if e.two_adjacent { "two-adjacent" } else { "other" };
                    println!("{} {tag}", e.coweight);
                }
            })
        }
        LatticeCommand::Triangle { n, apex } => {
            datum(*n)?;
            let mut pieces = Vec::new();
            let mut inputs = Vec::new();
            for text in apex {
                let ab: Vec<Rational> = parse_coords(text).map_err(|e| fail(exit::USAGE, e))?;
                let [a, b] = <[Rational; 2]>::try_from(ab).map_err(|_| fail(exit::USAGE, format!("apex `{text}` needs two values")))?;
                inputs.push(vec![a.to_string(), b.to_string()]);
                pieces.push(TriangleFunction::new(*n, a, b).map_err(|e| fail(lattice_code(&e), e))?);
            }
            let sample = TriangleEnvelope::new(pieces).sample();
            let report = LatticeReport { operation: "triangle", n: *n, inputs, bound: None, result: sample };
            emit(format, report, |s| println!("{s}"))
        }
    })
}

fn poisson_code(e: &PoissonError) -> u8 {
    match e {
        PoissonError::TruncationExceeded { .. } | PoissonError::LabelInvalid(_) | PoissonError::InvalidChart { .. } => {
            exit::USAGE
        }
        PoissonError::Groebner(GroebnerError::BudgetExceeded { .. }) => exit::CERTIFICATE,
        PoissonError::Lattice(_) => exit::LATTICE,
        _ => exit::VERIFICATION,
    }
}

fn label_arg(n: usize, text: &str) -> Result<MinorLabel, u8> {
    let bad = || fail(exit::USAGE, format!("label `{text}` is not rows|cols"));
    let (rows, cols) = text.split_once('|').ok_or_else(bad)?;
    let list = |s: &str| -> Result<Vec<usize>, u8> {
        s.split(',').map(|x| x.trim().parse::<usize>().map_err(|_| bad())).collect()
    };
    MinorLabel::new(n, list(rows)?, list(cols)?).map_err(|e| fail(poisson_code(&e), e))
}

fn tag(mut rec: VerificationRecord, config: PoissonConfig) -> VerificationRecord {
    let dual = match config.dual_action {
        DualAction::Contragredient => "contragredient",
        DualAction::Transpose => "transpose",
    };
    rec.parameters.insert("sign".to_string(), config.sign.to_string());
    rec.parameters.insert("dual_action".to_string(), dual.to_string());
    rec
}

pub fn poisson(cmd: &PoissonCommand, format: Format) -> u8 {
    let records = match run_poisson(cmd) {
        Ok(r) => r,
        Err(code) => return code,
    };
    match format {
        Format::Json => print_json(&records),
        Format::Text => {
            for r in &records {
                let verdict = if r.verdict { "PASS" } else { "FAIL" };
                let params: Vec<String> = r.parameters.iter().map(|(k, v)| format!("{k}={v}")).collect();
                println!("{verdict} {} N={} checked={} {}", r.check, r.truncation, r.checked, params.join(" "));
                if let Some(w) = &r.witness {
                    println!("  witness: {w}");
                }
            }
        }
    }
    if records.iter().all(|r| r.verdict) {
        exit::OK
    } else {
        exit::VERIFICATION
    }
}

fn run_poisson(cmd: &PoissonCommand) -> Result<Vec<VerificationRecord>, u8> {
    let err = |e: PoissonError| fail(poisson_code(&e), e);
    let chart = |n: usize, t: usize| GroupChart::new(n, t).map_err(err);
    match cmd {
        PoissonCommand::Axioms { n, truncation, samples, seed, conventions } => {
            let c = chart(*n, *truncation)?;
            let sampling = match samples {
                Some(s) => AxiomSampling::Sampled { seed: *seed, samples: *s },
                None => AxiomSampling::Exhaustive,
            };
            let cfg = conventions.config();
            Ok(verify_axioms(&c, sampling, cfg).map_err(err)?.into_iter().map(|r| tag(r, cfg)).collect())
        }
        PoissonCommand::Minors { n, truncation, first, second, conventions } => {
            let c = chart(*n, *truncation)?;
            let cfg = conventions.config();
            let pairs = match (first, second) {
                (Some(a), Some(b)) => vec![(label_arg(*n, a)?, label_arg(*n, b)?)],
                _ => {
                    let ones: Vec<MinorLabel> = (1..=*n)
                        .flat_map(|r| (1..=*n).map(move |col| (r, col)))
                        .map(|(r, col)| MinorLabel::new(*n, vec![r], vec![col]).expect("valid 1x1 label"))
                        .collect();
                    ones.iter().flat_map(|a| ones.iter().map(move |b| (a.clone(), b.clone()))).collect()
                }
            };
            pairs
                .iter()
                .map(|(a, b)| verify_minor_bracket_identity(a, b, &c, cfg).map(|r| tag(r, cfg)).map_err(err))
                .collect()
        }
        PoissonCommand::LemmaF { n, j, kk, truncation, i, conventions } => {
            if *j < 1 || *j >= *n || *kk < 1 {
                return Err(fail(exit::USAGE, format!("need 1 <= j < n and kk >= 1, got j = {j}, kk = {kk}")));
            }
            let c = chart(*n, *truncation)?;
            let cfg = conventions.config();
            let sizes: Vec<usize> = match i {
                Some(i) if (1..*n).contains(i) => vec![*i],
                Some(i) => return Err(fail(exit::USAGE, format!("minor size {i} out of range 1..{n}"))),
                None => (1..*n).collect(),
            };
            let mut out = Vec::new();
            for size in sizes {
                for label in lemma_labels(*n, size) {
                    out.push(tag(verify_lemma_bracket_f(*j, *kk, &label, &c, cfg).map_err(err)?, cfg));
                }
            }
            Ok(out)
        }
        PoissonCommand::IdealCompare { n, k, truncation, budget } => {
            if *n < 2 || *k < 1 {
                return Err(fail(exit::USAGE, format!("need n >= 2 and k >= 1, got n = {n}, k = {k}")));
            }
            let rep = compare_ideals_mu_zero(*n, *k, *truncation, &budget.budget()).map_err(err)?;
            Ok(vec![rep.record])
        }
    }
}
