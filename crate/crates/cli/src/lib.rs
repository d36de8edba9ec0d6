//! Command-line front end for thetaforge.

pub mod json;

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use thetaforge::heisenberg::{fourier_abelian, heis_mul, heis_reduce, schrodinger_matrix, HeisElt};
use thetaforge::pillowcase::{equivalence_check, weyl_cos_matrix, CosObservable};
use thetaforge::quantum_group::{
    admissible_colorings, d_iso, dual_rep, fusion_mul, irrep, FusionElement, TrivalentGraph, RELATION_LABELS,
};
use thetaforge::rt_torus::{compare_with_word, hopf_gram, rho_kac_peterson, rho_word, rt_rep_matrix, ReducedSkein, TorusSkein};
use thetaforge::scalar::{default_prec_bits, embed, gauss_sum, parse_rational, qint, ComplexAP, CycScalar};
use thetaforge::sl2z::{parse_word, sl2z_decompose, word_matrix, word_string, SL2Z};
use thetaforge::theta_numeric::{
    periodicity_check, s_transform_check, t_transform_check, theta_eval, zeta_eval, ModularParam, SeriesConfig, TPhase,
};
use thetaforge::verify::{self, IntRange, Sizes, VerifyReport};
use thetaforge::{Error, Result};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "thetaforge", version, about = "Exact and numeric checks for abelian and SU(2) theta functions on the torus")]
struct Cli {
    /// Print JSON instead of text
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized sweeps
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Working precision in bits (default: THETAFORGE_PREC_BITS or 128)
    #[arg(long, global = true)]
    prec_bits: Option<u32>,
    /// Write the result to a file instead of standard out
    #[arg(long, global = true)]
    out: Option<std::path::PathBuf>,
    /// File format for --out
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Cyclotomic scalars
    #[command(subcommand)]
    Scalar(ScalarCmd),
    /// Heisenberg group
    #[command(subcommand)]
    Heis(HeisCmd),
    /// Abelian Fourier transform ρ(h) on theta functions of level N
    Fourier(FourierArgs),
    /// Reshetikhin–Turaev torus skein algebra and mapping-class matrices
    #[command(subcommand)]
    Rt(RtCmd),
    /// Pillow-case Weyl quantization
    #[command(subcommand)]
    Pillow(PillowCmd),
    /// Quantum group, fusion ring, colorings
    #[command(subcommand)]
    Qg(QgCmd),
    /// Theta series numerics
    #[command(subcommand)]
    Theta(ThetaCmd),
    /// Run verification suites
    Verify(VerifyArgs),
}

#[derive(Subcommand, Debug)]
enum ScalarCmd {
    /// t^k with t = e^{iπ/2r}
    TPow {
        #[arg(long)]
        r: u32,
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
    },
    /// Quantum integer [n] = (t^{2n} − t^{−2n})/(t² − t^{−2})
    Qint {
        #[arg(long)]
        r: u32,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
    },
    /// Σ_k [jk][k]t^{−k²}
    Gauss {
        #[arg(long)]
        r: u32,
        #[arg(long, allow_hyphen_values = true)]
        j: i64,
    },
    /// Numeric value of a power-basis coefficient list "a/b,c/d,…"
    Eval {
        #[arg(long)]
        r: u32,
        #[arg(long, allow_hyphen_values = true)]
        coeffs: String,
    },
}

#[derive(Subcommand, Debug)]
enum HeisCmd {
    /// (p,q,k)(p',q',k') in H(Z)
    Mul {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
    /// Canonical representative in the finite Heisenberg group of level N
    Reduce {
        #[arg(long = "N")]
        n: u32,
        #[arg(long, allow_hyphen_values = true)]
        e: String,
    },
    /// Schrödinger matrix of (p,q,k)
    Rep {
        #[arg(long = "N")]
        n: u32,
        #[arg(long, allow_hyphen_values = true)]
        p: i64,
        #[arg(long, allow_hyphen_values = true)]
        q: i64,
        #[arg(long, allow_hyphen_values = true, default_value_t = 0)]
        k: i64,
    },
}

#[derive(Args, Debug)]
struct FourierArgs {
    #[arg(long = "N")]
    n: u32,
    #[command(flatten)]
    h: ElementArgs,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct ElementArgs {
    /// Word in S, T, s = S^{-1}, t = T^{-1}
    #[arg(long)]
    word: Option<String>,
    /// Matrix entries a,b,c,d
    #[arg(long, allow_hyphen_values = true)]
    matrix: Option<String>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum RhoMethod {
    Word,
    Kacpeterson,
}

#[derive(Subcommand, Debug)]
enum RtCmd {
    /// Product of two curves (p,q)_T
    Mul {
        #[arg(long)]
        r: u32,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
    /// Matrix of (p,q)_T on the ζ basis
    Rep {
        #[arg(long)]
        r: u32,
        #[arg(long, allow_hyphen_values = true)]
        p: i64,
        #[arg(long, allow_hyphen_values = true)]
        q: i64,
    },
    /// Hopf pairing Gram matrix [jk]
    Hopf {
        #[arg(long)]
        r: u32,
    },
    /// ρ(h) on the ζ basis
    Rho {
        #[arg(long)]
        r: u32,
        #[command(flatten)]
        h: ElementArgs,
        #[arg(long, value_enum, default_value_t = RhoMethod::Word)]
        method: RhoMethod,
    },
    /// Product-to-sum, presentation and mapping-class checks over r-min..r-max
    Verify {
        #[arg(long, default_value_t = 2)]
        r_min: u32,
        #[arg(long, default_value_t = 6)]
        r_max: u32,
        #[arg(long, default_value_t = 100)]
        pairs: usize,
    },
}

#[derive(Subcommand, Debug)]
enum PillowCmd {
    /// Op(2cos 2π(px+qy)) on the ζ basis
    Op {
        #[arg(long)]
        r: u32,
        #[arg(long, allow_hyphen_values = true)]
        p: i64,
        #[arg(long, allow_hyphen_values = true)]
        q: i64,
    },
    /// Compare Weyl and skein matrices for |p|,|q| ≤ 3r
    Verify {
        #[arg(long, default_value_t = 2)]
        r_min: u32,
        #[arg(long, default_value_t = 6)]
        r_max: u32,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum GraphKind {
    Caterpillar,
    Theta,
    Dumbbell,
}

#[derive(Subcommand, Debug)]
enum QgCmd {
    /// X, Y, K on the k-dimensional irreducible module
    Irrep {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        k: u32,
        /// Use the dual module
        #[arg(long)]
        dual: bool,
        /// Check the defining relations; exit 1 if any fails
        #[arg(long)]
        check: bool,
    },
    /// Isomorphism from the dual module
    Diso {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        k: u32,
    },
    /// V^a · V^b in the fusion ring
    Fusion {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        a: u32,
        #[arg(long)]
        b: u32,
    },
    /// Number of admissible colorings
    Verlinde {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        genus: u32,
        #[arg(long, value_enum, default_value_t = GraphKind::Caterpillar)]
        graph: GraphKind,
    },
}

#[derive(Args, Debug)]
struct SeriesArgs {
    #[arg(long = "N")]
    n: u32,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0)]
    j: i64,
    /// re,im
    #[arg(long, allow_hyphen_values = true, default_value = "0,1")]
    tau: String,
    /// re,im
    #[arg(long, allow_hyphen_values = true, default_value = "0.3,0.2")]
    z: String,
    #[arg(long, default_value_t = 30)]
    radius: u32,
    /// Precision in bits (overrides --prec-bits)
    #[arg(long)]
    prec: Option<u32>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum ThetaCheck {
    TTransform,
    STransform,
    Periodicity,
}

#[derive(Subcommand, Debug)]
enum ThetaCmd {
    /// θ_j^τ(z), or ζ_j^τ(z) with --zeta (then N = 2r)
    Eval {
        #[command(flatten)]
        s: SeriesArgs,
        #[arg(long)]
        zeta: bool,
    },
    /// Transformation laws at one point
    Check {
        #[arg(value_enum)]
        which: ThetaCheck,
        #[command(flatten)]
        s: SeriesArgs,
    },
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Suite name or "all"
    suite: String,
    #[arg(long, default_value = "2..8")]
    r: String,
    #[arg(long = "N", default_value = "2..8")]
    n: String,
    #[arg(long, default_value_t = Sizes::default().pts_pairs)]
    pairs: usize,
    #[arg(long, default_value_t = Sizes::default().egorov_words)]
    words: usize,
    #[arg(long, default_value_t = Sizes::default().kp_samples)]
    kp_samples: usize,
}

/// Command result: JSON value, optional matrix for CSV, and the exit status.
struct Output {
    value: Value,
    table: Option<Value>,
    status: i32,
}

impl Output {
    fn ok(value: Value) -> Self {
        Output { value, table: None, status: EXIT_OK }
    }

    fn matrix(value: Value, rows: Value) -> Self {
        Output { value, table: Some(rows), status: EXIT_OK }
    }

    fn checked(value: Value, pass: bool) -> Self {
        Output { value, table: None, status: if pass { EXIT_OK } else { EXIT_VERIFY } }
    }
}

fn ints(s: &str, n: usize, what: &str) -> Result<Vec<i64>> {
    let v: std::result::Result<Vec<i64>, _> = s.split(',').map(|x| x.trim().parse::<i64>()).collect();
    match v {
        Ok(v) if v.len() == n => Ok(v),
        _ => Err(Error::InvalidArgument(format!("{what}: expected {n} comma-separated integers, got {s:?}"))),
    }
}

fn complex_arg(s: &str, prec: u32, what: &str) -> Result<ComplexAP> {
    let v: std::result::Result<Vec<f64>, _> = s.split(',').map(|x| x.trim().parse::<f64>()).collect();
    match v {
        Ok(v) if v.len() == 2 => Ok(ComplexAP::new(prec, v[0], v[1])),
        _ => Err(Error::InvalidArgument(format!("{what}: expected re,im, got {s:?}"))),
    }
}

fn element(h: &ElementArgs) -> Result<SL2Z> {
    match (&h.word, &h.matrix) {
        (Some(w), _) => Ok(word_matrix(&parse_word(w)?)),
        (_, Some(m)) => {
            let v = ints(m, 4, "--matrix")?;
            SL2Z::new(v[0], v[1], v[2], v[3])
        }
        _ => Err(Error::InvalidArgument("one of --word or --matrix is required".into())),
    }
}

fn sl2z_json(h: &SL2Z) -> Value {
    json!([[h.a, h.b], [h.c, h.d]])
}

fn check_r(r: u32) -> Result<()> {
    if r < 2 {
        return Err(Error::InvalidArgument(format!("r must be at least 2, got {r}")));
    }
    Ok(())
}

fn complex_full(c: &ComplexAP) -> Value {
    let mut v = json::complex(c);
    let digits = (c.prec() as f64 * std::f64::consts::LOG10_2) as usize;
    v["decimal"] = json!({ "re": format!("{:.*e}", digits, c.re()), "im": format!("{:.*e}", digits, c.im()) });
    v
}

fn scalar_out(c: &CycScalar, prec: u32) -> Output {
    let mut v = json!({ "value": json::cyc(c), "numeric": json::complex(&embed(c, prec)), "display": c.to_string() });
    if let Some(k) = json::t_power(c) {
        v["t_power"] = k.into();
    }
    Output::ok(v)
}

fn report_out(rep: &VerifyReport) -> Output {
    Output::checked(json::report(rep), rep.passed())
}

fn run_cmd(cli: &Cli, prec: u32) -> Result<Output> {
    Ok(match &cli.cmd {
        Cmd::Scalar(c) => match c {
            ScalarCmd::TPow { r, k } => scalar_out(&CycScalar::t_pow(*r, *k), prec),
            ScalarCmd::Qint { r, n } => scalar_out(&qint(*n, *r), prec),
            ScalarCmd::Gauss { r, j } => scalar_out(&gauss_sum(*j, *r), prec),
            ScalarCmd::Eval { r, coeffs } => {
                let qs = coeffs.split(',').map(parse_rational).collect::<Result<Vec<_>>>()?;
                if qs.len() > CycScalar::one(*r).phi() {
                    return Err(Error::InvalidArgument(format!("at most {} coefficients at r = {r}", CycScalar::one(*r).phi())));
                }
                scalar_out(&CycScalar::from_coeffs(*r, &qs), prec)
            }
        },
        Cmd::Heis(c) => match c {
            HeisCmd::Mul { a, b } => {
                let (a, b) = (ints(a, 3, "--a")?, ints(b, 3, "--b")?);
                let e = heis_mul(&HeisElt::new(a[0], a[1], a[2]), &HeisElt::new(b[0], b[1], b[2]));
                Output::ok(json!({ "p": e.p, "q": e.q, "k": e.k }))
            }
            HeisCmd::Reduce { n, e } => {
                let v = ints(e, 3, "--e")?;
                let f = heis_reduce(&HeisElt::new(v[0], v[1], v[2]), *n)?;
                Output::ok(json!({ "N": f.n, "p": f.p, "q": f.q, "k": f.k }))
            }
            HeisCmd::Rep { n, p, q, k } => {
                let f = heis_reduce(&HeisElt::new(*p, *q, *k), *n)?;
                let rows = json::exact_matrix(&schrodinger_matrix(&f));
                Output::matrix(json!({ "N": n, "element": [f.p, f.q, f.k], "rows": rows }), rows)
            }
        },
        Cmd::Fourier(a) => {
            let h = element(&a.h)?;
            let rows = json::complex_matrix(&fourier_abelian(&h, a.n, prec)?);
            Output::matrix(
                json!({ "N": a.n, "h": sl2z_json(&h), "word": word_string(&sl2z_decompose(&h)), "rows": rows, "phase_convention": "col0-first-nonzero" }),
                rows,
            )
        }
        Cmd::Rt(c) => match c {
            RtCmd::Mul { r, a, b } => {
                check_r(*r)?;
                let (a, b) = (ints(a, 2, "--a")?, ints(b, 2, "--b")?);
                let unit = CycScalar::one(*r);
                let x: ReducedSkein = TorusSkein::curve(&unit, a[0], a[1]);
                let y: ReducedSkein = TorusSkein::curve(&unit, b[0], b[1]);
                Output::ok(json::skein(&x.pts_mul(&y)?))
            }
            RtCmd::Rep { r, p, q } => {
                check_r(*r)?;
                let rows = json::exact_matrix(&rt_rep_matrix(&TorusSkein::curve(&CycScalar::one(*r), *p, *q), *r)?);
                Output::matrix(json!({ "r": r, "curve": [p, q], "rows": rows }), rows)
            }
            RtCmd::Hopf { r } => {
                check_r(*r)?;
                let rows = json::exact_matrix(&hopf_gram(*r)?);
                Output::matrix(json!({ "r": r, "rows": rows }), rows)
            }
            RtCmd::Rho { r, h, method } => {
                check_r(*r)?;
                let h = element(h)?;
                match method {
                    RhoMethod::Word => {
                        let w = sl2z_decompose(&h);
                        let m = rho_word(&w, *r)?;
                        let rows = json::complex_matrix(&m.to_numeric(prec));
                        Output::matrix(
                            json!({
                                "r": r, "h": sl2z_json(&h), "word": word_string(&w), "method": "word", "rows": rows,
                                "exact": { "rows": json::exact_matrix(&m.exact), "norm": json::cyc(&m.norm), "power": m.power },
                            }),
                            rows,
                        )
                    }
                    RhoMethod::Kacpeterson => {
                        if *r < 3 {
                            return Err(Error::InvalidArgument("the Kac–Peterson kernel needs r ≥ 3".into()));
                        }
                        let k = rho_kac_peterson(&h, *r)?;
                        let cmp = compare_with_word(&k, &h, *r, prec)?;
                        let rows = json::exact_matrix(&k);
                        Output::matrix(
                            json!({
                                "r": r, "h": sl2z_json(&h), "method": "kacpeterson", "rows": rows,
                                "word_comparison": { "c": json::complex(&cmp.c), "residual": cmp.residual },
                            }),
                            rows,
                        )
                    }
                }
            }
            RtCmd::Verify { r_min, r_max, pairs } => {
                let rs = IntRange::new((*r_min).max(2), *r_max)?;
                let kp = IntRange::new(rs.lo.max(3), rs.hi.max(3))?;
                let reps = vec![
                    verify::product_to_sum(rs, *pairs, cli.seed)?,
                    verify::presentation(rs)?,
                    verify::mcg_matrices(rs, kp, 10, cli.seed, prec)?,
                ];
                report_out(&VerifyReport::merge(reps, "rt"))
            }
        },
        Cmd::Pillow(c) => match c {
            PillowCmd::Op { r, p, q } => {
                check_r(*r)?;
                let rows = json::exact_matrix(&weyl_cos_matrix(CosObservable::new(*p, *q), *r)?);
                Output::matrix(json!({ "r": r, "p": p, "q": q, "rows": rows }), rows)
            }
            PillowCmd::Verify { r_min, r_max } => {
                let rs = IntRange::new((*r_min).max(2), *r_max)?;
                let (mut checked, mut mismatches) = (0, Vec::new());
                for r in rs.iter() {
                    let rep = equivalence_check(r, 3 * r as i64)?;
                    checked += rep.checked;
                    mismatches.extend(rep.mismatches.iter().map(|(p, q)| json!({ "r": r, "p": p, "q": q })));
                }
                let pass = mismatches.is_empty();
                Output::checked(json!({ "checked": checked, "mismatches": mismatches }), pass)
            }
        },
        Cmd::Qg(c) => match c {
            QgCmd::Irrep { r, k, dual, check } => {
                let q = if *dual { dual_rep(*k, *r)? } else { irrep(*k, *r)? };
                let mut v = json!({
                    "r": r, "k": k, "dual": dual,
                    "X": json::exact_matrix(&q.x), "Y": json::exact_matrix(&q.y), "K": json::exact_matrix(&q.kmat),
                });
                let mut pass = true;
                if *check {
                    let rel = q.relations();
                    pass = rel.iter().all(|b| *b);
                    let m: serde_json::Map<String, Value> = RELATION_LABELS.iter().zip(rel).map(|(l, b)| (l.to_string(), b.into())).collect();
                    v["relations"] = Value::Object(m);
                }
                Output::checked(v, pass)
            }
            QgCmd::Diso { r, k } => {
                let d = d_iso(*k, *r)?;
                let branches: serde_json::Map<String, Value> = d.branch_results.iter().map(|(b, ok)| (b.label().to_string(), (*ok).into())).collect();
                let rows = json::exact_matrix(&d.matrix);
                Output {
                    value: json!({
                        "r": r, "k": k, "branch": d.branch.label(), "rows": rows,
                        "branches_intertwining": branches, "exactly_one_branch": d.exactly_one_branch(),
                    }),
                    table: Some(rows),
                    status: EXIT_OK,
                }
            }
            QgCmd::Fusion { r, a, b } => {
                let p = fusion_mul(&FusionElement::basis(*a, *r)?, &FusionElement::basis(*b, *r)?)?;
                Output::ok(json!({ "r": r, "coeffs": p.coeffs_i64() }))
            }
            QgCmd::Verlinde { r, genus, graph } => {
                let g = match graph {
                    GraphKind::Caterpillar => TrivalentGraph::caterpillar(*genus)?,
                    GraphKind::Theta | GraphKind::Dumbbell if *genus != 2 => {
                        return Err(Error::InvalidArgument(format!("{graph:?} graph has genus 2, got --genus {genus}")));
                    }
                    GraphKind::Theta => TrivalentGraph::theta(),
                    GraphKind::Dumbbell => TrivalentGraph::dumbbell(),
                };
                Output::ok(json!({ "count": admissible_colorings(&g, *r)?.0 }))
            }
        },
        Cmd::Theta(c) => {
            let s = match c {
                ThetaCmd::Eval { s, .. } | ThetaCmd::Check { s, .. } => s,
            };
            let p = s.prec.unwrap_or(prec);
            let tau = ModularParam::new(complex_arg(&s.tau, p, "--tau")?)?;
            let z = complex_arg(&s.z, p, "--z")?;
            let cfg = SeriesConfig::new(s.radius, p)?;
            match c {
                ThetaCmd::Eval { zeta, .. } => {
                    let v = if *zeta {
                        if s.n % 2 != 0 {
                            return Err(Error::InvalidArgument(format!("N must be even, got {}", s.n)));
                        }
                        zeta_eval(s.j, &tau, &z, s.n / 2, &cfg)?
                    } else {
                        theta_eval(s.j, &tau, &z, s.n, &cfg)?
                    };
                    Output::ok(json!({ "N": s.n, "j": s.j, "value": complex_full(&v.value), "tail_bound": v.tail_bound }))
                }
                ThetaCmd::Check { which, .. } => match which {
                    ThetaCheck::Periodicity => {
                        let rep = periodicity_check(s.j, &tau, &z, s.n, &cfg)?;
                        Output::checked(
                            json!({ "check": "periodicity", "residual": rep.residual, "printed_residual": rep.printed_residual, "tolerance": verify::PERIODICITY_TOL }),
                            rep.residual < verify::PERIODICITY_TOL,
                        )
                    }
                    ThetaCheck::STransform => {
                        let rep = s_transform_check(s.j, &tau, &z, s.n, &cfg)?;
                        Output::checked(
                            json!({ "check": "s-transform", "residual": rep.residual, "printed_residual": rep.printed_residual, "tolerance": verify::S_TRANSFORM_TOL }),
                            rep.residual < verify::S_TRANSFORM_TOL,
                        )
                    }
                    ThetaCheck::TTransform => {
                        let rep = t_transform_check(s.j, &tau, &z, s.n, &cfg)?;
                        let phase = rep.matches.map(|m| match m {
                            TPhase::Single => "exp(pi i j^2/N)",
                            TPhase::Double => "exp(2 pi i j^2/N)",
                        });
                        Output::checked(
                            json!({
                                "check": "t-transform", "ratio": json::complex(&rep.ratio), "phase": phase,
                                "residual_single": rep.residual_single, "residual_double": rep.residual_double,
                                "z_used": json::complex(&rep.z_used),
                            }),
                            phase.is_some(),
                        )
                    }
                },
            }
        }
        Cmd::Verify(a) => {
            let rs = IntRange::parse(&a.r)?;
            let ns = IntRange::parse(&a.n)?;
            if ns.evens().next().is_none() {
                return Err(Error::InvalidArgument(format!("--N {ns} contains no even level")));
            }
            let sizes = Sizes { egorov_words: a.words, pts_pairs: a.pairs, kp_samples: a.kp_samples };
            let rep = if a.suite == "all" {
                verify::run_all(rs, ns, cli.seed, prec, sizes)?
            } else {
                verify::run_suite(&a.suite, rs, ns, cli.seed, prec, sizes)?
            };
            report_out(&rep)
        }
    })
}

fn render(cli: &Cli, out: &Output) -> Result<Vec<u8>> {
    if cli.out.is_some() && cli.format == Format::Csv {
        let cells = out
            .table
            .as_ref()
            .and_then(json::csv_cells)
            .ok_or_else(|| Error::InvalidArgument("--format csv needs a matrix-valued command".into()))?;
        return json::matrix_csv(&cells);
    }
    if cli.json || cli.out.is_some() {
        let mut s = serde_json::to_string_pretty(&out.value).map_err(|e| Error::Internal(e.to_string()))?;
        s.push('\n');
        Ok(s.into_bytes())
    } else {
        Ok(json::text(&out.value).into_bytes())
    }
}

/// Runs the CLI on argv (including the program name); returns the exit code.
pub fn run_with<I, S>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(stderr, "{text}");
                EXIT_USAGE
            } else {
                let _ = write!(stdout, "{text}");
                EXIT_OK
            };
        }
    };
    let prec = cli.prec_bits.unwrap_or_else(default_prec_bits);
    let out = match run_cmd(&cli, prec) {
        Ok(o) => o,
        Err(Error::Verification(m)) => {
            let _ = writeln!(stderr, "verification failed: {m}");
            return EXIT_VERIFY;
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let bytes = match render(&cli, &out) {
        Ok(b) => b,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return EXIT_USAGE;
        }
    };
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &bytes) {
                let _ = writeln!(stderr, "error: cannot write {}: {e}", path.display());
                return EXIT_USAGE;
            }
        }
        None => {
            if stdout.write_all(&bytes).is_err() {
                return EXIT_USAGE;
            }
        }
    }
    out.status
}

pub fn run() -> i32 {
    run_with(std::env::args_os(), &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}
