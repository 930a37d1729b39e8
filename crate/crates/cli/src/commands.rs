use std::fs;
use std::path::Path;

use num_rational::BigRational;
use queerify_core::center::{center, supercenter};
use queerify_core::condition::{
    montgomery_condition_check, ConditionReading, ConditionStrategy, ConditionVerdict,
    DEFAULT_BUDGET,
};
use queerify_core::construct::{smash_product, ActionMatrix, FiniteGroup};
use queerify_core::dunkl::survey::{observables_span_survey, DEFAULT_SURVEY_BUDGET};
use queerify_core::dunkl::{
    check_dunkl_commutativity, compare_hamiltonians, losev_simple, negative_control, DunklContext,
    OperatorExpr,
};
use queerify_core::fingerprint::fingerprint;
use queerify_core::glambda::{casimir_check, ideal_codim_probe, CASIMIR};
use queerify_core::lie::{derived, herstein_l, lie_of, montgomery_sl, LieMode, LieSubquotient};
use queerify_core::linalg::Subspace;
use queerify_core::queer::{queerify_assoc, queerify_lie, QueerTower};
use queerify_core::simplicity::{
    is_central_simple, is_simple_with, CenterMode, SimplicityOptions, Verdict,
};
use queerify_core::{qalg, AlgebraKind, Error, FieldSpec, Result, Scalar, SuperAlgebra};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::args::{CenterModeArg, Command, LieModeArg, QueerKind, ReadingArg, StrategyArg};
use crate::expr::{parse_algebra, parse_field, parse_polynomial};
use crate::report::InputDigest;

/// Settings shared by every command.
pub struct Ctx {
    pub budget: Option<u128>,
    pub seed: u64,
    pub field: FieldSpec,
}

/// What a command computed, before exit-code policy is applied.
pub struct Output {
    pub command: &'static str,
    pub inputs: Vec<InputDigest>,
    pub result: Value,
    pub verdict: Option<String>,
    /// Whether the command's own property holds when no `--expect` is given.
    pub holds: bool,
    pub inconclusive: bool,
    pub coverage: Option<Value>,
    pub seeded: bool,
}

impl Output {
    pub(crate) fn new(command: &'static str, inputs: Vec<InputDigest>, result: Value) -> Self {
        Output {
            command,
            inputs,
            result,
            verdict: None,
            holds: true,
            inconclusive: false,
            coverage: None,
            seeded: false,
        }
    }

    fn verdict(mut self, v: impl Into<String>) -> Self {
        self.verdict = Some(v.into());
        self
    }
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("results serialize")
}

fn rational(s: &str) -> Result<BigRational> {
    s.trim()
        .parse()
        .map_err(|_| Error::Parse(format!("expected a rational such as 1/2, got {s:?}")))
}

/// Reads a qalg file (validated before use) or builds an expression.
pub fn load_algebra(arg: &str, ctx: &Ctx) -> Result<(SuperAlgebra, InputDigest)> {
    let path = Path::new(arg);
    if path.is_file() {
        let text =
            fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("{arg}: {e}")))?;
        let a = qalg::from_json(&text).map_err(|e| match e {
            Error::Parse(m) => Error::Parse(format!("{arg}: {m}")),
            other => other,
        })?;
        let report = a.validate_with_seed(ctx.seed);
        if let Some(v) = report.violations.first() {
            return Err(Error::InvalidInput(format!(
                "{arg}: algebra fails validation ({} violations, first {})",
                report.violations.len(),
                serde_json::to_string(v).expect("violations serialize")
            )));
        }
        Ok((a, InputDigest::new("file", arg, text.as_bytes())))
    } else {
        let a = parse_algebra(arg, ctx.field)?;
        Ok((a, InputDigest::new("expr", arg, arg.as_bytes())))
    }
}

fn summary(a: &SuperAlgebra) -> Value {
    json!({
        "kind": a.kind().to_string(),
        "field": a.field().to_string(),
        "dim": a.dim(),
        "even_dim": a.even_dim(),
        "odd_dim": a.odd_dim(),
    })
}

fn write_output(a: &SuperAlgebra, path: Option<&Path>) -> Result<Value> {
    let text = format!("{}\n", qalg::to_json(a));
    let digest = crate::report::sha256_hex(text.as_bytes());
    if let Some(p) = path {
        fs::write(p, &text).map_err(|e| Error::InvalidInput(format!("{}: {e}", p.display())))?;
    }
    Ok(json!({
        "path": path.map(|p| p.display().to_string()),
        "sha256": digest,
    }))
}

/// `2*E11 + E22` style rendering of a coefficient vector.
fn describe(a: &SuperAlgebra, v: &[Scalar]) -> String {
    let parts: Vec<String> = v
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| {
            let label = &a.labels()[i];
            if c.is_one() {
                label.clone()
            } else {
                format!("({c})*{label}")
            }
        })
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

fn subspace_value(a: &SuperAlgebra, w: &Subspace) -> Value {
    json!({
        "dim": w.dim(),
        "basis": w.basis().iter().map(|v| describe(a, v)).collect::<Vec<_>>(),
    })
}

fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Simple => "simple",
        Verdict::NotSimple => "not-simple",
        Verdict::Inconclusive => "inconclusive",
    }
}

fn simplicity_value(a: &SuperAlgebra, ctx: &Ctx) -> Result<(Value, Verdict)> {
    let opts = SimplicityOptions {
        seed: ctx.seed,
        ..Default::default()
    };
    let v = is_simple_with(a, &opts)?;
    let mut value = to_value(&v);
    if let Some(w) = &v.witness {
        value["witness"]["basis"] = json!(w
            .subspace
            .basis()
            .iter()
            .map(|b| describe(a, b))
            .collect::<Vec<_>>());
    }
    Ok((value, v.verdict))
}

fn algebra_output(
    command: &'static str,
    input: InputDigest,
    a: &SuperAlgebra,
    out: Option<&Path>,
    extra: Value,
) -> Result<Output> {
    let mut result = json!({ "algebra": summary(a), "qalg": write_output(a, out)? });
    if let (Value::Object(r), Value::Object(e)) = (&mut result, extra) {
        r.extend(e);
    }
    Ok(Output::new(command, vec![input], result).verdict(a.dim().to_string()))
}

fn subquotient(
    command: &'static str,
    input: InputDigest,
    r: LieSubquotient,
    ctx: &Ctx,
    out: Option<&Path>,
) -> Result<Output> {
    let (simplicity, verdict) = simplicity_value(&r.algebra, ctx)?;
    let result = json!({
        "algebra": summary(&r.algebra),
        "qalg": write_output(&r.algebra, out)?,
        "derived_dim": r.derived_dim,
        "center_dim": r.center_dim,
        "intersection_dim": r.intersection_dim,
        "degenerate": r.degenerate,
        "simplicity": simplicity,
    });
    let mut o = Output::new(command, vec![input], result).verdict(verdict_name(verdict));
    o.inconclusive = verdict == Verdict::Inconclusive;
    o.seeded = true;
    Ok(o)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ActionsFile {
    generators: Vec<usize>,
    matrices: Vec<Vec<Vec<String>>>,
}

fn parse_group(spec: &str) -> Result<FiniteGroup> {
    let (family, n) = spec.split_once(':').ok_or_else(|| {
        Error::Parse(format!(
            "group must be cyclic:N or symmetric:N, got {spec:?}"
        ))
    })?;
    let n: usize = n
        .parse()
        .map_err(|_| Error::Parse(format!("bad group order in {spec:?}")))?;
    match family {
        "cyclic" => FiniteGroup::cyclic(n),
        "symmetric" => FiniteGroup::symmetric(n),
        other => Err(Error::Parse(format!("unknown group family {other:?}"))),
    }
}

pub fn execute(cmd: &Command, ctx: &Ctx) -> Result<Output> {
    match cmd {
        Command::Construct { name, params, out } => {
            let src = if name.contains('(') || params.is_empty() && name.contains('@') {
                name.clone()
            } else {
                let (base, field) = match name.split_once('@') {
                    Some((b, f)) => (b, format!("@{f}")),
                    None => (name.as_str(), String::new()),
                };
                format!("{base}({}){field}", params.join(","))
            };
            let a = parse_algebra(&src, ctx.field)?;
            let input = InputDigest::new("expr", &src, src.as_bytes());
            algebra_output("construct", input, &a, out.output.as_deref(), json!({}))
        }
        Command::Validate(arg) => {
            let path = Path::new(&arg.algebra);
            // Parse without the validation gate so violations are reported.
            let (a, input) = if path.is_file() {
                let text = fs::read_to_string(path)
                    .map_err(|e| Error::InvalidInput(format!("{}: {e}", arg.algebra)))?;
                (
                    qalg::from_json(&text)?,
                    InputDigest::new("file", &arg.algebra, text.as_bytes()),
                )
            } else {
                load_algebra(&arg.algebra, ctx)?
            };
            let r = a.validate_with_seed(ctx.seed);
            let valid = r.is_valid();
            let coverage =
                json!({ "exhaustive": r.exhaustive, "triples_checked": r.triples_checked });
            let mut o = Output::new(
                "validate",
                vec![input],
                json!({ "algebra": summary(&a), "validation": to_value(&r) }),
            )
            .verdict(if valid { "valid" } else { "invalid" });
            o.holds = valid;
            o.coverage = Some(coverage);
            o.seeded = !r.exhaustive;
            Ok(o)
        }
        Command::Queerify { kind, input, out } => {
            let (a, d) = load_algebra(&input.algebra, ctx)?;
            let q = match kind {
                QueerKind::Assoc => queerify_assoc(&a)?,
                QueerKind::Lie => queerify_lie(&a)?,
            };
            algebra_output("queerify", d, &q, out.output.as_deref(), json!({}))
        }
        Command::LieOf { input, mode, out } => {
            let (a, d) = load_algebra(&input.algebra, ctx)?;
            let mode = match mode {
                LieModeArg::Plain => LieMode::Plain,
                LieModeArg::Super => LieMode::Super,
            };
            let l = lie_of(&a, mode)?;
            algebra_output("lie-of", d, &l, out.output.as_deref(), json!({}))
        }
        Command::Derived { input, out } => {
            let (a, d) = load_algebra(&input.algebra, ctx)?;
            if a.kind() != AlgebraKind::LieSuper {
                return Err(Error::InvalidInput(
                    "derived needs a Lie superalgebra; apply lie-of first".into(),
                ));
            }
            let (w, sub) = derived(&a)?;
            let extra = json!({ "subspace": subspace_value(&a, &w) });
            algebra_output("derived", d, &sub, out.output.as_deref(), extra)
        }
        Command::Center(arg) | Command::Supercenter(arg) => {
            let (a, d) = load_algebra(&arg.algebra, ctx)?;
            let (name, z) = match cmd {
                Command::Center(_) => ("center", center(&a)?),
                _ => ("supercenter", supercenter(&a)?),
            };
            let result = json!({ "algebra": summary(&a), name: subspace_value(&a, &z) });
            Ok(Output::new(name, vec![d], result).verdict(z.dim().to_string()))
        }
        Command::QtrTower { n, out_dir } => {
            let t = QueerTower::new(ctx.field, *n)?;
            let mut members = serde_json::Map::new();
            for (name, alg) in [("q", &t.q), ("sq", &t.sq), ("pq", &t.pq), ("psq", &t.psq)] {
                let path = out_dir.as_ref().map(|d| d.join(format!("{name}.qalg")));
                members.insert(
                    name.into(),
                    json!({ "algebra": summary(alg), "qalg": write_output(alg, path.as_deref())? }),
                );
            }
            let param = format!("n={n} field={}", ctx.field);
            let input = InputDigest::new("params", &param, param.as_bytes());
            let dims = format!(
                "{}/{}/{}/{}",
                t.q.dim(),
                t.sq.dim(),
                t.pq.dim(),
                t.psq.dim()
            );
            Ok(Output::new("qtr-tower", vec![input], Value::Object(members)).verdict(dims))
        }
        Command::Herstein { input, out } => {
            let (a, d) = load_algebra(&input.algebra, ctx)?;
            subquotient("herstein", d, herstein_l(&a)?, ctx, out.output.as_deref())
        }
        Command::MontgomerySl { input, out } => {
            let (a, d) = load_algebra(&input.algebra, ctx)?;
            subquotient(
                "montgomery-sl",
                d,
                montgomery_sl(&a)?,
                ctx,
                out.output.as_deref(),
            )
        }
        Command::ConditionCheck {
            input,
            strategy,
            count,
            reading,
        } => {
            let (a, d) = load_algebra(&input.algebra, ctx)?;
            let strategy = match strategy.unwrap_or(
                if a.field().is_field() && a.field() != FieldSpec::Rationals {
                    StrategyArg::Exhaustive
                } else {
                    StrategyArg::Sample
                },
            ) {
                StrategyArg::Exhaustive => ConditionStrategy::Exhaustive {
                    budget: ctx.budget.unwrap_or(DEFAULT_BUDGET),
                },
                StrategyArg::Sample => ConditionStrategy::Sample {
                    count: *count,
                    seed: ctx.seed,
                },
            };
            let reading = match reading {
                ReadingArg::NonzeroSquare => ConditionReading::NonzeroSquare,
                ReadingArg::Literal => ConditionReading::Literal,
            };
            let r = montgomery_condition_check(&a, strategy, reading)?;
            let verdict = match r.verdict {
                ConditionVerdict::Violated => "violated",
                ConditionVerdict::NoViolationFound => "no-violation",
            };
            let mut o = Output::new("condition-check", vec![d], to_value(&r)).verdict(verdict);
            o.coverage = Some(to_value(&r.coverage));
            o.seeded = matches!(strategy, ConditionStrategy::Sample { .. });
            Ok(o)
        }
        Command::Simplicity {
            input,
            central,
            center_mode,
        } => {
            let (a, d) = load_algebra(&input.algebra, ctx)?;
            let (mut result, verdict) = simplicity_value(&a, ctx)?;
            let mut verdict_text = verdict_name(verdict).to_string();
            if *central {
                let mode = center_mode.map(|m| match m {
                    CenterModeArg::Plain => CenterMode::Plain,
                    CenterModeArg::Super => CenterMode::Super,
                });
                let c = is_central_simple(&a, mode)?;
                result["central"] = json!({ "central_simple": c.central_simple, "mode": c.mode, "center_dim": c.center_dim });
                if verdict == Verdict::Simple {
                    verdict_text = if c.central_simple {
                        "central-simple"
                    } else {
                        "simple"
                    }
                    .into();
                }
            }
            let mut o = Output::new("simplicity", vec![d], result).verdict(verdict_text);
            o.inconclusive = verdict == Verdict::Inconclusive;
            o.seeded = true;
            Ok(o)
        }
        Command::Fingerprint { input, compare } => {
            let (a, d) = load_algebra(&input.algebra, ctx)?;
            let fa = fingerprint(&a)?;
            let mut inputs = vec![d];
            let mut result = json!({ "fingerprint": to_value(&fa) });
            let mut o_verdict = verdict_name(fa.simplicity_verdict).to_string();
            let mut holds = true;
            if let Some(other) = compare {
                let (b, db) = load_algebra(other, ctx)?;
                let fb = fingerprint(&b)?;
                holds = fa == fb;
                result["other"] = to_value(&fb);
                result["equal"] = json!(holds);
                inputs.push(db);
                o_verdict = if holds { "equal" } else { "different" }.into();
            }
            let mut o = Output::new("fingerprint", inputs, result).verdict(o_verdict);
            o.holds = holds;
            Ok(o)
        }
        Command::Smash {
            input,
            group,
            actions,
            out,
        } => {
            let (a, d) = load_algebra(&input.algebra, ctx)?;
            let g = parse_group(group)?;
            let mut inputs = vec![d, InputDigest::new("params", group, group.as_bytes())];
            let (gens, mats): (Vec<usize>, Vec<ActionMatrix>) = match actions {
                None => {
                    let id: ActionMatrix = (0..a.dim())
                        .map(|i| queerify_core::linalg::unit_vector(a.field(), a.dim(), i))
                        .collect();
                    ((0..g.order()).collect(), vec![id; g.order()])
                }
                Some(path) => {
                    let text = fs::read_to_string(path)
                        .map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
                    inputs.push(InputDigest::new(
                        "file",
                        path.display().to_string(),
                        text.as_bytes(),
                    ));
                    let f: ActionsFile = serde_json::from_str(&text).map_err(|e| {
                        Error::Parse(format!(
                            "{}: line {}, column {}: {e}",
                            path.display(),
                            e.line(),
                            e.column()
                        ))
                    })?;
                    let mats = f
                        .matrices
                        .iter()
                        .map(|m| {
                            m.iter()
                                .map(|row| {
                                    row.iter()
                                        .map(|s| a.field().parse_scalar(s))
                                        .collect::<Result<Vec<_>>>()
                                })
                                .collect::<Result<ActionMatrix>>()
                        })
                        .collect::<Result<Vec<_>>>()?;
                    (f.generators, mats)
                }
            };
            let s = smash_product(&a, &g, &gens, &mats)?;
            let mut o = algebra_output(
                "smash",
                inputs.remove(0),
                &s,
                out.output.as_deref(),
                json!({ "group_order": g.order() }),
            )?;
            o.inputs.extend(inputs);
            Ok(o)
        }
        Command::DunklCheck {
            n,
            dmax,
            negative_control: neg,
        } => {
            let r = if *neg {
                negative_control(*n, *dmax)?
            } else {
                check_dunkl_commutativity(*n, *dmax)?
            };
            let param = format!("n={n} dmax={dmax} negative_control={neg}");
            let coverage =
                json!({ "monomials": r.monomials, "identities_checked": r.identities_checked });
            let verdict = if r.all_zero {
                "commute"
            } else {
                "noncommuting"
            };
            let mut o = Output::new(
                "dunkl-check",
                vec![InputDigest::new("params", &param, param.as_bytes())],
                to_value(&r),
            )
            .verdict(verdict);
            o.holds = r.all_zero != *neg;
            o.coverage = Some(coverage);
            Ok(o)
        }
        Command::DunklApply { n, op, poly, nu } => {
            let ctx_d = match nu {
                Some(v) => DunklContext::at(*n, rational(v)?),
                None => DunklContext::formal(*n),
            };
            let op_expr: OperatorExpr = op.parse()?;
            let f = parse_polynomial(poly, *n)?;
            let g = ctx_d.apply(&op_expr, &f)?;
            let param = format!(
                "n={n} op={op} poly={poly} nu={}",
                nu.as_deref().unwrap_or("formal")
            );
            let result = json!({
                "operator": op_expr.to_string(),
                "input": f.to_string(),
                "output": g.to_string(),
                "output_terms": to_value(&g),
                "coupling": ctx_d.coupling.to_string(),
            });
            Ok(Output::new(
                "dunkl-apply",
                vec![InputDigest::new("params", &param, param.as_bytes())],
                result,
            ))
        }
        Command::DunklSurvey {
            n,
            word_len,
            dmax,
            nu,
        } => {
            let nu_q = rational(nu)?;
            let r = observables_span_survey(
                *n,
                *word_len,
                *dmax,
                &nu_q,
                ctx.budget.unwrap_or(DEFAULT_SURVEY_BUDGET),
            )?;
            let param = format!("n={n} word_len={word_len} dmax={dmax} nu={nu}");
            let rank = r.rows.last().map_or(0, |row| row.rank);
            let mut o = Output::new(
                "dunkl-survey",
                vec![InputDigest::new("params", &param, param.as_bytes())],
                to_value(&r),
            )
            .verdict(rank.to_string());
            o.coverage =
                Some(json!({ "domain_dim": r.domain_dim, "codomain_dim": r.codomain_dim }));
            Ok(o)
        }
        Command::Losev { c, n } => {
            let r = losev_simple(&rational(c)?, *n)?;
            let param = format!("c={c} n={n}");
            let verdict = if r.simple { "simple" } else { "not-simple" };
            Ok(Output::new(
                "losev",
                vec![InputDigest::new("params", &param, param.as_bytes())],
                to_value(&r),
            )
            .verdict(verdict))
        }
        Command::GlambdaCasimir { cutoff, mu } => {
            let r = casimir_check(*cutoff, mu)?;
            let param = format!("cutoff={cutoff} mu={mu:?}");
            let mut o = Output::new(
                "glambda-casimir",
                vec![InputDigest::new("params", &param, param.as_bytes())],
                to_value(&r),
            )
            .verdict(if r.holds { "holds" } else { "fails" });
            o.holds = r.holds;
            Ok(o)
        }
        Command::GlambdaProbe { n, degree } => {
            let r = ideal_codim_probe(*n, *degree)?;
            let param = format!("n={n} degree={degree}");
            let mut result = to_value(&r);
            result["casimir"] = json!(CASIMIR);
            let mut o = Output::new(
                "glambda-probe",
                vec![InputDigest::new("params", &param, param.as_bytes())],
                result,
            )
            .verdict(if r.surjective {
                "surjective"
            } else {
                "not-surjective"
            });
            o.coverage = Some(json!({ "monomials_tested": r.monomials_tested }));
            Ok(o)
        }
        Command::CompareHamiltonians { n, dmax } => {
            let r = compare_hamiltonians(*n, *dmax)?;
            let param = format!("n={n} dmax={dmax}");
            let verdict = if r.equal == r.inputs {
                "equal"
            } else if r.negatives == r.inputs {
                "negatives"
            } else {
                "differ"
            };
            let mut result = to_value(&r);
            result["note"] =
                json!("both displayed forms evaluated on symmetric monomials; nothing is asserted");
            Ok(Output::new(
                "compare-hamiltonians",
                vec![InputDigest::new("params", &param, param.as_bytes())],
                result,
            )
            .verdict(verdict))
        }
        Command::Batch { .. } => Err(Error::Internal("batch is dispatched separately".into())),
    }
}

/// Field given by `--field`.
pub fn field_flag(s: &str) -> Result<FieldSpec> {
    parse_field(s)
}
