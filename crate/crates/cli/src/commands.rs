//! Command dispatch: each command runs an engine operation and returns a
//! JSON payload with a fixed schema.

use std::sync::Arc;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use thiserror::Error;

use generica_core::complexes::{
    eagon_northcott, en_acyclic_by_grade, ext_vanishes, homology_vanishes, koszul_on_module, tor_vanishes,
    ChainComplex,
};
use generica_core::determinantal::{det_ideal, det_profile, generic_matrix_over, DetProfile, MatrixKind, MatrixShape};
use generica_core::groebner::Ideal;
use generica_core::ideal_theory::{grade_direct, grade_koszul, height, krull_dim, regular_sequence_check};
use generica_core::perturb::{
    perturb_matrix, perturb_to_height, perturb_to_proper_intersection, perturb_to_regular, stability_order_search,
    AvoidList, Composite, InvariantValue, MatrixTarget, PerturbWitness, SearchConfig, SearchFailure,
    StabilityConfig, StabilityPredicate,
};
use generica_core::ring::{Field, Poly, PolyMatrix, Ring, DEFAULT_PRIME};
use generica_core::{complexes::grade_via_ext, Error as EngineError};

use crate::report::{grade_value, object, opt_value, Report};
use crate::session::{Arg, Command, Op, Session};

/// Trials for the random part of the direct grade method.
const DIRECT_GRADE_TRIALS: usize = 50;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub seed: u64,
    pub budget: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { seed: 0, budget: SearchConfig::default().budget }
    }
}

#[derive(Debug, Error)]
pub enum RunError {
    #[error("{op}: {source}")]
    Engine { op: &'static str, source: EngineError },
    /// A search ran out of trials; the report carries the statistics.
    #[error("{op}: no witness found: {failure}")]
    Budget { op: &'static str, failure: Box<SearchFailure>, report: Box<Report> },
    #[error("{op}: {message}")]
    Usage { op: &'static str, message: String },
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Budget { .. } => 4,
            RunError::Engine { .. } | RunError::Usage { .. } => 3,
        }
    }
}

struct Ctx<'a> {
    session: &'a Session,
    cmd: &'a Command,
    cfg: RunConfig,
}

type CResult<T> = Result<T, RunError>;

impl<'a> Ctx<'a> {
    fn op(&self) -> &'static str {
        self.cmd.op.name()
    }

    fn engine<T>(&self, r: generica_core::Result<T>) -> CResult<T> {
        r.map_err(|source| RunError::Engine { op: self.op(), source })
    }

    fn usage<T>(&self, message: impl Into<String>) -> CResult<T> {
        Err(RunError::Usage { op: self.op(), message: message.into() })
    }

    fn ring(&self) -> CResult<&'a Arc<Ring>> {
        match self.session.ring() {
            Some(r) => Ok(r),
            None => self.usage("ring not declared"),
        }
    }

    fn name(&self, k: usize) -> &'a str {
        match &self.cmd.args[k] {
            Arg::Name(s) => s,
            Arg::Int(_) => panic!("argument {k} of `{}` is not a name", self.cmd),
        }
    }

    fn int(&self, k: usize) -> usize {
        match &self.cmd.args[k] {
            Arg::Int(n) => *n as usize,
            Arg::Name(_) => panic!("argument {k} of `{}` is not an integer", self.cmd),
        }
    }

    fn ideal(&self, name: &str) -> CResult<Ideal> {
        match self.session.ideal(name) {
            Some(i) => Ok(i),
            None => self.usage(format!("unknown ideal `{name}`")),
        }
    }

    fn module_ann(&self) -> CResult<Ideal> {
        match self.cmd.option("module") {
            Some(j) => self.ideal(j),
            None => Ok(Ideal::zero(self.ring()?)),
        }
    }

    fn opt_int(&self, key: &str) -> Option<usize> {
        self.cmd.option(key).map(|v| v.parse().expect("checked by the parser"))
    }

    fn opt_bool(&self, key: &str) -> bool {
        self.cmd.option(key) == Some("true")
    }

    fn format_list(&self, ps: &[Poly]) -> CResult<Value> {
        let ring = self.ring()?;
        Ok(json!(ps.iter().map(|p| ring.format(p)).collect::<Vec<_>>()))
    }

    fn format_matrix(&self, ring: &Ring, m: &PolyMatrix) -> Value {
        let rows: Vec<Vec<String>> = (0..m.rows()).map(|i| m.row(i).iter().map(|p| ring.format(p)).collect()).collect();
        json!(rows)
    }

    fn search_config(&self) -> SearchConfig {
        SearchConfig {
            budget: self.opt_int("budget").unwrap_or(self.cfg.budget),
            seed: self.cfg.seed,
            check_hypothesis: self.opt_bool("hypothesis"),
        }
    }
}

pub fn invariant_value(v: &InvariantValue) -> Value {
    match v {
        InvariantValue::Flag(b) => json!(b),
        InvariantValue::Count(c) => opt_value(*c),
        InvariantValue::Counts(cs) => json!(cs.iter().map(|c| opt_value(*c)).collect::<Vec<_>>()),
    }
}

fn kind_of(word: &str) -> MatrixKind {
    match word {
        "symmetric" => MatrixKind::Symmetric,
        "skew" => MatrixKind::Skew,
        _ => MatrixKind::Generic,
    }
}

pub fn profile_payload(profile: &DetProfile, m: usize, n: usize) -> Value {
    let rows: Vec<Value> = profile
        .rows
        .iter()
        .map(|r| {
            let mut row = object([
                ("j", json!(r.j)),
                ("generators", json!(r.generators)),
                ("height", opt_value(r.height)),
                ("expected", json!(r.expected)),
                ("target", json!(r.target)),
                ("matches", json!(r.matches)),
            ]);
            if let Some(g) = r.grade {
                row["grade"] = grade_value(g);
            }
            row
        })
        .collect();
    object([
        ("kind", json!(profile.kind.to_string())),
        ("m", json!(m)),
        ("n", json!(n)),
        ("all_match", json!(profile.all_match())),
        ("rows", json!(rows)),
    ])
}

/// Homology rows for slots `1..=length` plus whether all of them vanish.
pub fn interior_homology(c: &ChainComplex) -> (Vec<Value>, bool) {
    let mut rows = Vec::new();
    let mut exact = true;
    for i in 1..=c.length() {
        let h = homology_vanishes(c, i);
        exact &= h.vanishes;
        rows.push(object([("slot", json!(i)), ("rank", json!(c.rank(i))), ("vanishes", json!(h.vanishes))]));
    }
    (rows, exact)
}

fn gb(ctx: &Ctx) -> CResult<Value> {
    let i = ctx.ideal(ctx.name(0))?;
    let basis = i.groebner().to_vec();
    Ok(object([("size", json!(basis.len())), ("basis", ctx.format_list(&basis)?)]))
}

fn nf(ctx: &Ctx) -> CResult<Value> {
    let t = ctx.session.tuple(ctx.name(0)).expect("checked by the parser");
    let i = ctx.ideal(ctx.name(1))?;
    let nfs = t.iter().map(|p| i.normal_form(p)).collect::<generica_core::Result<Vec<_>>>();
    let nfs = ctx.engine(nfs)?;
    let members: Vec<bool> = nfs.iter().map(Poly::is_zero).collect();
    Ok(object([("normal_forms", ctx.format_list(&nfs)?), ("members", json!(members))]))
}

fn grade(ctx: &Ctx) -> CResult<Value> {
    let i = ctx.ideal(ctx.name(0))?;
    let ann = ctx.module_ann()?;
    let method = ctx.cmd.option("method").unwrap_or("koszul");
    let koszul = || ctx.engine(grade_koszul(&i, &ann)).map(|r| r.grade);
    let ext = || ctx.engine(grade_via_ext(&i, &ann));
    let direct = || {
        let mut rng = ChaCha8Rng::seed_from_u64(ctx.cfg.seed);
        ctx.engine(grade_direct(&i, &ann, &mut rng, DIRECT_GRADE_TRIALS)).map(|r| (r.grade, r.certified))
    };
    Ok(match method {
        "all" => {
            let (k, e, (d, certified)) = (koszul()?, ext()?, direct()?);
            object([
                ("koszul", grade_value(k)),
                ("ext", grade_value(e)),
                ("direct", grade_value(d)),
                ("direct_certified", json!(certified)),
                ("agree", json!(k == e && e == d)),
            ])
        }
        "ext" => object([("grade", grade_value(ext()?)), ("method", json!("ext"))]),
        "direct" => {
            let (d, certified) = direct()?;
            object([("grade", grade_value(d)), ("method", json!("direct")), ("certified", json!(certified))])
        }
        _ => object([("grade", grade_value(koszul()?)), ("method", json!("koszul"))]),
    })
}

fn regseq(ctx: &Ctx) -> CResult<Value> {
    let t = ctx.session.tuple(ctx.name(0)).expect("checked by the parser");
    let r = ctx.engine(regular_sequence_check(&t, &ctx.module_ann()?, true))?;
    Ok(object([
        ("regular", json!(r.regular)),
        ("first_failure", opt_value(r.first_failure)),
        ("proper", json!(r.proper)),
    ]))
}

fn koszul(ctx: &Ctx) -> CResult<Value> {
    let t = ctx.session.tuple(ctx.name(0)).expect("checked by the parser");
    let c = ctx.engine(koszul_on_module(&t, &ctx.module_ann()?))?;
    let (rows, exact) = interior_homology(&c);
    Ok(object([("ranks", json!(c.ranks())), ("exact", json!(exact)), ("rows", json!(rows))]))
}

fn detideal(ctx: &Ctx) -> CResult<Value> {
    let ring = ctx.ring()?;
    let phi = ctx.session.matrix(ctx.name(0)).expect("checked by the parser");
    let r = ctx.int(1);
    let i = ctx.engine(det_ideal(ring, &phi, r, None))?;
    let unit = i.is_unit();
    let h = if unit { None } else { Some(ctx.engine(height(&i))?.height) };
    Ok(object([
        ("r", json!(r)),
        ("generators", json!(i.gens().iter().filter(|p| !p.is_zero()).count())),
        ("unit", json!(unit)),
        ("height", opt_value(h)),
    ]))
}

fn profile(ctx: &Ctx) -> CResult<Value> {
    let with_grade = ctx.opt_bool("grade");
    let (ring, phi, kind) = match &ctx.cmd.args[0] {
        Arg::Name(w) if ctx.session.decl(w).is_none() => {
            let kind = kind_of(w);
            let m = ctx.int(1);
            let n = if kind == MatrixKind::Generic { ctx.int(2) } else { m };
            let field = ctx.session.ring().map_or(Field::Prime(DEFAULT_PRIME), |r| r.field().clone());
            let shape = MatrixShape { kind, m, n };
            let (ring, phi) = ctx.engine(generic_matrix_over(&shape, field))?;
            (ring, phi, kind)
        }
        Arg::Name(name) => {
            let phi = ctx.session.matrix(name).expect("checked by the parser");
            (ctx.ring()?.clone(), phi, kind_of(ctx.cmd.option("kind").unwrap_or("generic")))
        }
        Arg::Int(_) => unreachable!("checked by the parser"),
    };
    let p = ctx.engine(det_profile(&ring, &phi, kind, with_grade, None))?;
    Ok(profile_payload(&p, phi.rows(), phi.cols()))
}

fn en(ctx: &Ctx) -> CResult<Value> {
    let ring = ctx.ring()?;
    let phi = ctx.session.matrix(ctx.name(0)).expect("checked by the parser");
    let i = ctx.int(1);
    let c = ctx.engine(eagon_northcott(ring, &phi, i))?;
    let (rows, acyclic) = interior_homology(&c);
    let verdict = ctx.engine(en_acyclic_by_grade(ring, &phi, i as i64 - 1))?;
    let by_grade = verdict.verdicts.iter().find(|(k, _)| *k == i as i64).map(|(_, a)| *a).unwrap_or(false);
    Ok(object([
        ("i", json!(i)),
        ("ranks", json!(c.ranks())),
        ("acyclic", json!(acyclic)),
        ("acyclic_by_grade", json!(by_grade)),
        ("agree", json!(acyclic == by_grade)),
        ("top_grade", grade_value(verdict.top_grade)),
        ("required_grade", json!(verdict.required)),
        ("rows", json!(rows)),
    ]))
}

fn tor_ext(ctx: &Ctx) -> CResult<Value> {
    let a = ctx.ideal(ctx.name(0))?;
    let b = ctx.ideal(ctx.name(1))?;
    let j = ctx.int(2);
    let cert = if ctx.cmd.op == Op::Tor { tor_vanishes(&a, &b, j) } else { ext_vanishes(&a, &b, j) };
    let cert = ctx.engine(cert)?;
    Ok(object([("j", json!(j)), ("vanishes", json!(cert.vanishes))]))
}

fn witness_fields(w: &PerturbWitness) -> CResult<Vec<(&'static str, Value)>> {
    let reverified = w.reverify().map_err(|source| RunError::Engine { op: "perturb", source })?;
    Ok(vec![
        ("target", json!(w.target())),
        ("invariant_before", invariant_value(&w.invariant_before)),
        ("invariant_after", invariant_value(&w.invariant_after)),
        ("trials_used", json!(w.trials_used)),
        ("reverified", json!(reverified)),
        ("advisory_hypothesis", opt_value(w.advisory_hypothesis)),
    ])
}

fn budget_error(ctx: &Ctx, failure: Box<SearchFailure>) -> RunError {
    let payload = object([
        ("error", json!("budget exhausted")),
        ("target", json!(failure.target)),
        ("trials", json!(failure.trials)),
        ("rejected_by_avoid", json!(failure.rejected_by_avoid)),
        ("predicate_failures", json!(failure.predicate_failures)),
        ("advisory_hypothesis", opt_value(failure.advisory_hypothesis)),
    ]);
    let report = Report::new(ctx.cmd.to_string(), "", ctx.cfg.seed, 0, payload);
    RunError::Budget { op: ctx.op(), failure, report: Box::new(report) }
}

fn search<T>(ctx: &Ctx, r: generica_core::Result<T>) -> CResult<T> {
    match r {
        Ok(v) => Ok(v),
        Err(EngineError::BudgetExhausted(f)) => Err(budget_error(ctx, f)),
        Err(source) => Err(RunError::Engine { op: ctx.op(), source }),
    }
}

fn perturb(ctx: &Ctx) -> CResult<Value> {
    let ring = ctx.ring()?;
    let cfg = ctx.search_config();
    let degree = ctx.opt_int("degree").map(|d| d as u32);
    if ctx.cmd.args.len() == 1 {
        let phi = ctx.session.matrix(ctx.name(0)).expect("checked by the parser");
        let j = match ctx.cmd.option("ideal") {
            Some(j) => ctx.ideal(j)?,
            None => Ideal::maximal(ring),
        };
        let kind = kind_of(ctx.cmd.option("kind").unwrap_or("generic"));
        let target = match ctx.cmd.option("target").unwrap_or("profile") {
            "injective" => MatrixTarget::Injectivity,
            "preserve" => MatrixTarget::PreserveLowMinors {
                kind,
                r: ctx.opt_int("r").expect("checked by the parser"),
                q: ctx.opt_int("q").unwrap_or(1) as u32,
            },
            _ => MatrixTarget::DetProfile { kind, from: ctx.opt_int("from").unwrap_or(0) },
        };
        let (psi, w) = search(ctx, perturb_matrix(ring, &phi, &j, target, degree, &cfg))?;
        let sum = ctx.engine(phi.add(ring, &psi))?;
        let mut fields = witness_fields(&w)?;
        fields.push(("psi", ctx.format_matrix(ring, &psi)));
        fields.push(("perturbed", ctx.format_matrix(ring, &sum)));
        fields.push(("budget", json!(cfg.budget)));
        return Ok(object(fields));
    }
    let f = ctx.session.tuple_vec(ctx.name(0)).expect("checked by the parser");
    let space = ctx.session.space(ctx.name(1), degree).expect("checked by the parser");
    let space = ctx.engine(space)?;
    let mut avoid = AvoidList::empty();
    if let Some(a) = ctx.cmd.option("avoid") {
        let n = ctx.engine(ctx.session.space(a, None).expect("checked by the parser"))?;
        avoid.push(n.member_ideals().to_vec());
    }
    let h = Composite::identity(ring, f.rank());
    let w = match ctx.cmd.option("target").unwrap_or("regular") {
        "height" => {
            let c = ctx.opt_int("height").expect("checked by the parser");
            search(ctx, perturb_to_height(&h, &f, c, &space, &avoid, &cfg))?
        }
        "proper" => {
            let other = ctx.ideal(ctx.cmd.option("with").expect("checked by the parser"))?;
            search(ctx, perturb_to_proper_intersection(&h, &f, &other, &space, &avoid, &cfg))?
        }
        _ => search(ctx, perturb_to_regular(&h, &f, &ctx.module_ann()?, &space, &avoid, &cfg))?,
    };
    let fg = f.add(ring, &w.g);
    let mut fields = witness_fields(&w)?;
    fields.push(("g", ctx.format_list(w.g.components())?));
    fields.push(("f_plus_g", ctx.format_list(fg.components())?));
    fields.push(("budget", json!(cfg.budget)));
    fields.push(("min_order", json!(space.min_order())));
    fields.push(("degree_bound", json!(space.degree_bound())));
    Ok(object(fields))
}

fn stability(ctx: &Ctx) -> CResult<Value> {
    let f = ctx.session.tuple(ctx.name(0)).expect("checked by the parser");
    let space = ctx.engine(ctx.session.space(ctx.name(1), None).expect("checked by the parser"))?;
    let predicate = match ctx.cmd.option("predicate").unwrap_or("regular") {
        "height" => StabilityPredicate::HeightAtLeast(ctx.opt_int("height").expect("checked by the parser")),
        "koszul" => StabilityPredicate::KoszulExact { module_ann: ctx.module_ann()? },
        _ => StabilityPredicate::Regular { module_ann: ctx.module_ann()? },
    };
    let defaults = StabilityConfig::default();
    let cfg = StabilityConfig {
        max_q: ctx.opt_int("max-q").map_or(defaults.max_q, |v| v as u32),
        trials_per_q: ctx.opt_int("trials").unwrap_or(defaults.trials_per_q),
        degree_slack: ctx.opt_int("slack").map_or(defaults.degree_slack, |v| v as u32),
        filtration: None,
        seed: ctx.cfg.seed,
    };
    let rep = ctx.engine(stability_order_search(&space, &f, &predicate, &cfg))?;
    let rows: Vec<Value> = rep
        .curve
        .iter()
        .map(|p| object([("q", json!(p.q)), ("trials", json!(p.trials)), ("failures", json!(p.failures))]))
        .collect();
    Ok(object([
        ("base_ok", json!(rep.base_ok)),
        ("stable_q", opt_value(rep.stable_q)),
        ("summary", json!(rep.summary())),
        ("max_q", json!(cfg.max_q)),
        ("rows", json!(rows)),
    ]))
}

/// Runs one command of a parsed session. `input` is the session text the
/// report's hash refers to.
pub fn run_command(session: &Session, cmd: &Command, input: &str, cfg: RunConfig) -> Result<Report, RunError> {
    let ctx = Ctx { session, cmd, cfg };
    let start = Instant::now();
    let payload = match cmd.op {
        Op::Gb => gb(&ctx),
        Op::Nf => nf(&ctx),
        Op::Dim => Ok(object([("dim", json!(krull_dim(&ctx.ideal(ctx.name(0))?)))])),
        Op::Height => {
            let h = ctx.engine(height(&ctx.ideal(ctx.name(0))?))?;
            Ok(object([("height", json!(h.height))]))
        }
        Op::Grade => grade(&ctx),
        Op::Regseq => regseq(&ctx),
        Op::Koszul => koszul(&ctx),
        Op::Detideal => detideal(&ctx),
        Op::Profile => profile(&ctx),
        Op::En => en(&ctx),
        Op::Tor | Op::Ext => tor_ext(&ctx),
        Op::Perturb => perturb(&ctx),
        Op::Stability => stability(&ctx),
    };
    let payload = match payload {
        Ok(p) => p,
        Err(RunError::Budget { op, failure, mut report }) => {
            report.input_sha256 = crate::report::sha256_hex(input);
            report.elapsed_ms = start.elapsed().as_millis() as u64;
            return Err(RunError::Budget { op, failure, report });
        }
        Err(e) => return Err(e),
    };
    let elapsed = start.elapsed().as_millis() as u64;
    Ok(Report::new(cmd.to_string(), input, cfg.seed, elapsed, payload))
}

/// Runs every command in order, stopping at the first error.
pub fn run_session(session: &Session, input: &str, cfg: RunConfig) -> (Vec<Report>, Option<RunError>) {
    let mut reports = Vec::new();
    for cmd in session.commands() {
        match run_command(session, cmd, input, cfg) {
            Ok(r) => reports.push(r),
            Err(e) => return (reports, Some(e)),
        }
    }
    (reports, None)
}

/// Re-runs the command a report echoes against the session it came from
/// and compares payloads. Fails if the input hash does not match.
pub fn replay(report: &Report, input: &str) -> Result<bool, String> {
    if crate::report::sha256_hex(input) != report.input_sha256 {
        return Err("input does not match the report's hash".into());
    }
    let session = crate::parser::parse_session(input).map_err(|e| e.to_string())?;
    let cmd = session
        .commands()
        .find(|c| c.to_string() == report.command)
        .ok_or_else(|| format!("command `{}` not in the session", report.command))?;
    let budget = report.payload.get("budget").and_then(Value::as_u64).map_or(RunConfig::default().budget, |b| b as usize);
    let again = run_command(&session, cmd, input, RunConfig { seed: report.seed, budget }).map_err(|e| e.to_string())?;
    Ok(again.payload == report.payload)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_session;

    fn run(src: &str) -> Vec<Report> {
        let s = parse_session(src).unwrap();
        let (reports, err) = run_session(&s, src, RunConfig::default());
        assert!(err.is_none(), "{err:?}");
        reports
    }

    #[test]
    fn height_of_a_smooth_pair() {
        let r = run("ring GF(32003)[x,y]; ideal I = x, x+y^2; height I;");
        assert_eq!(r[0].payload, json!({"height": 2}));
        assert_eq!(r[0].command, "height I");
    }

    #[test]
    fn grade_of_the_maximal_ideal() {
        let r = run("ring GF(32003)[x,y,z]; ideal I = x, y, z; ideal J = 0; grade I --module J; grade I --method all;");
        assert_eq!(r[0].payload["grade"], json!(3));
        assert_eq!(r[1].payload["agree"], json!(true));
        assert_eq!(r[1].payload["direct"], json!(3));
    }

    #[test]
    fn infinite_grade_prints_as_a_string() {
        let r = run("ring GF(7)[x]; ideal I = 1; grade I;");
        assert_eq!(r[0].payload["grade"], json!("infinity"));
    }

    #[test]
    fn generic_profile_table() {
        let r = run("profile generic 2 3;");
        let rows = r[0].rows().unwrap();
        let heights: Vec<Value> = rows.iter().map(|row| row["height"].clone()).collect();
        assert_eq!(heights, vec![json!(6), json!(2)]);
        assert_eq!(r[0].payload["all_match"], json!(true));
    }

    #[test]
    fn tor_examples() {
        let r = run("ring GF(32003)[x,y]; ideal A = x + y^2; ideal B = x; tor A B 1; tor B B 1;");
        assert_eq!(r[0].payload["vanishes"], json!(true));
        assert_eq!(r[1].payload["vanishes"], json!(false));
    }

    #[test]
    fn perturb_reports_a_witness() {
        let src = "ring GF(32003)[x,y];\nideal U = 1;\ntuple T = x, x;\nspace S = sum(U, U) order 2;\nperturb T S --target regular;";
        let r = run(src);
        let p = &r[0].payload;
        assert_eq!(p["reverified"], json!(true));
        assert_eq!(p["invariant_before"], json!(false));
        assert_eq!(p["invariant_after"], json!(true));
        assert!(replay(&r[0], src).unwrap());
    }

    #[test]
    fn engine_errors_name_the_operation() {
        let src = "ring GF(7)[x]; ideal I = 1; height I;";
        let s = parse_session(src).unwrap();
        let (reports, err) = run_session(&s, src, RunConfig::default());
        assert!(reports.is_empty());
        let err = err.unwrap();
        assert_eq!(err.exit_code(), 3);
        assert!(err.to_string().starts_with("height: "));
    }

    #[test]
    fn exhausted_budget_has_its_own_exit_code() {
        let src = "ring GF(7)[x,y];\nideal X = x;\ntuple T = x, x;\nspace S = sum(X, X) order 1;\nperturb T S --budget 5;";
        let s = parse_session(src).unwrap();
        let (_, err) = run_session(&s, src, RunConfig::default());
        match err.unwrap() {
            e @ RunError::Budget { .. } => {
                assert_eq!(e.exit_code(), 4);
                let RunError::Budget { report, .. } = e else { unreachable!() };
                assert_eq!(report.payload["trials"], json!(5));
            }
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn explicit_eagon_northcott() {
        let r = run("ring GF(32003)[a,b,c,d,e,f]; matrix M 2 3 = [a, b, c; d, e, f]; en M 0; en M 1;");
        for rep in &r {
            assert_eq!(rep.payload["acyclic"], json!(true));
            assert_eq!(rep.payload["agree"], json!(true));
        }
    }
}
