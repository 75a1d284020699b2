//! The `tori` command line.
//!
//! Every invocation prints one JSON document on stdout (pretty when stdout
//! is a terminal, compact otherwise or with `--json`). Diagnostics go to
//! stderr. Exit status: 0 on success, 2 for parse and usage errors, 1 for
//! domain errors.

use std::io::{IsTerminal, Write};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::braid::{self, BraidWord};
use crate::cover::{self, CoverDoc, CoverElement};
use crate::error::{Error, Result};
use crate::hochschild::{self, algebra, bar, secondary, IterationOrder};
use crate::lattice::{self, FiniteTorusSubgroup, LatticeDoc, SubgroupDoc};
use crate::mat::{self, Mat2Q, Mat2Z};
use crate::orbit::{self, OrbitObject};
use crate::qq::{self, Q};
use crate::selftest;
use crate::semidirect::{self, SemidirectElement, TorusPoint};

#[derive(Parser, Debug)]
#[command(name = "tori", version, about = "Exact algebra of framed tori")]
pub struct Cli {
    /// Compact JSON output even on a terminal.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Words in B3 = <a, b | aba = bab>; `A`, `B` are inverses.
    #[command(subcommand)]
    Braid(BraidCmd),
    /// 2×2 integer matrices, written `[[a,b],[c,d]]`.
    #[command(subcommand)]
    Matrix(MatrixCmd),
    /// The universal-cover monoid; elements are `[[a,b],[c,d]]@w`.
    #[command(subcommand)]
    Cover(CoverCmd),
    /// Sublattices of Z² and finite subgroups of T².
    #[command(subcommand)]
    Lattice(LatticeCmd),
    /// The finite orbit category of T².
    #[command(subcommand)]
    Orbit(OrbitCmd),
    /// Semidirect products T² ⋊ M on rational points.
    #[command(subcommand)]
    Sd(SdCmd),
    /// Hochschild homology of builtin or file-defined algebras.
    #[command(subcommand)]
    Hh(HhCmd),
    /// Seeded property suites.
    Selftest {
        /// cocycle | duality | homology | all
        #[arg(default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = selftest::DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Subcommand, Debug)]
enum BraidCmd {
    /// Garside normal form.
    Nf { word: String },
    /// Concatenation, freely reduced.
    Mul { w1: String, w2: String },
    /// Word problem.
    Eq { w1: String, w2: String },
    /// Image in SL2(Z).
    Phi { word: String },
    /// `k` with `w = Δ^(4k)`, or null when Φ(w) ≠ I.
    Kernel { word: String },
    /// A word with Φ(word) = m, for m in SL2(Z).
    Lift { matrix: String },
}

#[derive(Subcommand, Debug)]
enum MatrixCmd {
    Det { matrix: String },
    /// Membership in E(Z), E⁺(Z), GL2(Z), SL2(Z).
    Classify { matrix: String },
    /// Row Hermite normal form of the row lattice.
    Hnf { matrix: String },
}

#[derive(Subcommand, Debug)]
enum CoverCmd {
    /// z = (a+d) + i(b−c).
    Z { matrix: String },
    /// ζ with η = Arg ζ, and the winding carry.
    Eta { a: String, b: String },
    Mul { x: String, y: String },
    /// Lift of a braid word through (U1,0), (U2,0).
    Lift { word: String },
    Transpose { x: String },
    /// (n·I, 0).
    Scalar { n: i64 },
}

#[derive(Subcommand, Debug)]
enum LatticeCmd {
    /// Number of sublattices of index n.
    Count { n: i64 },
    /// Sublattices of index n in Hermite normal form.
    Enumerate { n: i64 },
    /// Column span of an integer matrix.
    Image { matrix: String },
    /// Subgroup generated by points such as "(1/2,0) (0,1/3)".
    Subgroup { points: String },
    /// Every subgroup of order n.
    Subgroups { n: i64 },
    /// A_C for the subgroup generated by the given points.
    Matrix { points: String },
    /// Kernel of m acting on T².
    Kernel { matrix: String },
}

#[derive(Subcommand, Debug)]
enum OrbitCmd {
    /// Whether T²/C → T²/C' exists.
    Hom { c: String, c2: String },
    /// The map T²/C → T²/C' translating by `t`, with `t` reduced mod C'.
    Morphism { c: String, c2: String, translation: String },
    /// A·C for A in E⁺(Z).
    Act { matrix: String, c: String },
    /// Pullback A⁻¹(C).
    Preimage { matrix: String, c: String },
    /// Factorization poset through index --max.
    Poset {
        #[arg(long = "max", default_value_t = 4)]
        max: i64,
    },
}

#[derive(Subcommand, Debug)]
enum SdCmd {
    /// m·p mod Z².
    Act { matrix: String, point: String },
    /// g·q for g = ((x,y); part).
    Apply { element: String, point: String },
    Mul { g: String, h: String },
    Inverse { g: String },
}

#[derive(Args, Debug)]
struct Normalization {
    #[arg(long, conflicts_with = "unnormalized")]
    normalized: bool,
    #[arg(long)]
    unnormalized: bool,
}

impl Normalization {
    fn normalized(&self) -> bool {
        !self.unnormalized
    }
}

#[derive(Subcommand, Debug)]
enum HhCmd {
    /// Associativity, unitality and interchange report.
    Validate { algebra: String },
    /// Betti numbers of HH in degrees 0 ..= max − 2.
    Betti {
        algebra: String,
        #[arg(long = "max", default_value_t = 4)]
        max: i64,
        #[command(flatten)]
        norm: Normalization,
    },
    /// dim A/[A,A].
    Hh0 { algebra: String },
    /// Secondary Betti numbers in total degrees 0 ..= max − 2.
    Secondary {
        algebra: String,
        #[arg(long = "max", default_value_t = 4)]
        max: i64,
        #[arg(long, default_value = "first-mu1")]
        order: String,
        #[command(flatten)]
        norm: Normalization,
    },
    /// The rotations t1, t2 on C_{p,q} and their identities.
    Rotations { algebra: String, p: usize, q: usize },
    /// Chain dimensions and b, t, B identities through degree --max.
    Complex {
        algebra: String,
        #[arg(long = "max", default_value_t = 4)]
        max: i64,
        #[command(flatten)]
        norm: Normalization,
    },
}

fn parse<T: std::str::FromStr<Err = Error>>(s: &str) -> Result<T> {
    s.parse()
}

fn cover_element(s: &str) -> Result<CoverElement> {
    let (m, w) = s
        .split_once('@')
        .ok_or_else(|| Error::Parse(format!("expected [[a,b],[c,d]]@w, got {s:?}")))?;
    let w: i64 = w.trim().parse().map_err(|_| Error::Parse(format!("bad winding in {s:?}")))?;
    CoverElement::new(parse(m)?, w)
}

/// All `(x,y)` groups in `s`.
fn points(s: &str) -> Result<Vec<[Q; 2]>> {
    let mut out = Vec::new();
    let mut rest = s.trim();
    while !rest.is_empty() {
        let end = rest.find(')').ok_or_else(|| Error::Parse(format!("unclosed point in {s:?}")))?;
        let p: TorusPoint = rest[..=end].trim().parse()?;
        out.push([p.x().clone(), p.y().clone()]);
        rest = rest[end + 1..].trim_start_matches([',', ';', ' ']).trim();
    }
    Ok(out)
}

fn subgroup(s: &str) -> Result<FiniteTorusSubgroup> {
    Ok(lattice::subgroup_from_generators(&points(s)?))
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn braid_cmd(cmd: BraidCmd) -> Result<Value> {
    Ok(match cmd {
        BraidCmd::Nf { word } => to_value(&braid::normal_form(&parse(&word)?)),
        BraidCmd::Mul { w1, w2 } => {
            let w = braid::braid_mul(&parse(&w1)?, &parse(&w2)?);
            json!({ "word": w.compact(), "normal_form": braid::normal_form(&w) })
        }
        BraidCmd::Eq { w1, w2 } => {
            json!(braid::braid_eq(&parse::<BraidWord>(&w1)?, &parse::<BraidWord>(&w2)?))
        }
        BraidCmd::Phi { word } => to_value(&braid::phi(&parse(&word)?)),
        BraidCmd::Kernel { word } => json!({ "kernel_power": braid::kernel_power(&parse(&word)?)? }),
        BraidCmd::Lift { matrix } => {
            let w = braid::lift_matrix(&parse(&matrix)?)?;
            json!({ "word": w.compact(), "letters": w })
        }
    })
}

fn matrix_cmd(cmd: MatrixCmd) -> Result<Value> {
    Ok(match cmd {
        MatrixCmd::Det { matrix } => to_value(&mat::det(&parse::<Mat2Z>(&matrix)?).to_string()),
        MatrixCmd::Classify { matrix } => to_value(&mat::classify(&parse(&matrix)?)),
        MatrixCmd::Hnf { matrix } => {
            let m: Mat2Z = parse(&matrix)?;
            to_value(&mat::row_hnf([m.a.clone(), m.b.clone()], [m.c.clone(), m.d.clone()])?)
        }
    })
}

fn cover_cmd(cmd: CoverCmd) -> Result<Value> {
    Ok(match cmd {
        CoverCmd::Z { matrix } => {
            let z = cover::z_of(&parse::<Mat2Q>(&matrix)?)?;
            json!({ "re": qq::fmt_q(&z.re), "im": qq::fmt_q(&z.im) })
        }
        CoverCmd::Eta { a, b } => {
            let (a, b): (Mat2Q, Mat2Q) = (parse(&a)?, parse(&b)?);
            let zeta = cover::eta_zeta(&a, &b)?;
            json!({
                "zeta": [qq::fmt_q(&zeta.re), qq::fmt_q(&zeta.im)],
                "eta": zeta.arg_f64(),
                "carry": cover::carry(&a, &b)?,
            })
        }
        CoverCmd::Mul { x, y } => {
            to_value(&CoverDoc::from(&cover::cover_mul(&cover_element(&x)?, &cover_element(&y)?)))
        }
        CoverCmd::Lift { word } => to_value(&CoverDoc::from(&cover::lift_word(&parse(&word)?))),
        CoverCmd::Transpose { x } => to_value(&CoverDoc::from(&cover::transpose_cover(&cover_element(&x)?))),
        CoverCmd::Scalar { n } => to_value(&CoverDoc::from(&cover::scalar_lift(n)?)),
    })
}

fn lattice_cmd(cmd: LatticeCmd) -> Result<Value> {
    Ok(match cmd {
        LatticeCmd::Count { n } => json!(lattice::enumerate_sublattices(n)?.len()),
        LatticeCmd::Enumerate { n } => {
            let docs: Vec<LatticeDoc> = lattice::enumerate_sublattices(n)?.iter().map(LatticeDoc::from).collect();
            to_value(&docs)
        }
        LatticeCmd::Image { matrix } => to_value(&LatticeDoc::from(&lattice::image_lattice(&parse(&matrix)?)?)),
        LatticeCmd::Subgroup { points } => to_value(&SubgroupDoc::from(&subgroup(&points)?)),
        LatticeCmd::Subgroups { n } => {
            let docs: Vec<SubgroupDoc> = lattice::enumerate_subgroups(n)?.iter().map(SubgroupDoc::from).collect();
            to_value(&docs)
        }
        LatticeCmd::Matrix { points } => to_value(&lattice::matrix_from_subgroup(&subgroup(&points)?)),
        LatticeCmd::Kernel { matrix } => to_value(&SubgroupDoc::from(&lattice::kernel_subgroup(&parse(&matrix)?)?)),
    })
}

fn orbit_cmd(cmd: OrbitCmd) -> Result<Value> {
    Ok(match cmd {
        OrbitCmd::Hom { c, c2 } => {
            json!(orbit::hom_exists(&OrbitObject::new(subgroup(&c)?), &OrbitObject::new(subgroup(&c2)?)))
        }
        OrbitCmd::Morphism { c, c2, translation } => {
            let t: TorusPoint = parse(&translation)?;
            let f = orbit::OrbitMorphism::new(
                OrbitObject::new(subgroup(&c)?),
                OrbitObject::new(subgroup(&c2)?),
                [t.x().clone(), t.y().clone()],
            )?;
            let [x, y] = f.translation();
            json!({
                "source": SubgroupDoc::from(&f.source().subgroup),
                "target": SubgroupDoc::from(&f.target().subgroup),
                "translation": [qq::fmt_q(x), qq::fmt_q(y)],
            })
        }
        OrbitCmd::Act { matrix, c } => {
            let r = orbit::isogeny_act(&parse(&matrix)?, &OrbitObject::new(subgroup(&c)?))?;
            to_value(&SubgroupDoc::from(&r.subgroup))
        }
        OrbitCmd::Preimage { matrix, c } => {
            let r = orbit::preimage(&parse(&matrix)?, &OrbitObject::new(subgroup(&c)?))?;
            to_value(&SubgroupDoc::from(&r.subgroup))
        }
        OrbitCmd::Poset { max } => to_value(&orbit::factorization_poset(max)?),
    })
}

fn sd_cmd(cmd: SdCmd) -> Result<Value> {
    Ok(match cmd {
        SdCmd::Act { matrix, point } => {
            json!(semidirect::act_point(&parse(&matrix)?, &parse(&point)?)?.to_string())
        }
        SdCmd::Apply { element, point } => {
            let g: SemidirectElement = parse(&element)?;
            json!(semidirect::aff_apply(&g, &parse(&point)?).to_string())
        }
        SdCmd::Mul { g, h } => json!(semidirect::sd_mul(&parse(&g)?, &parse(&h)?)?.to_string()),
        SdCmd::Inverse { g } => json!(parse::<SemidirectElement>(&g)?.inverse()?.to_string()),
    })
}

fn trust_note(max: i64) -> String {
    if max >= 2 {
        format!("degrees 0..={} exact; chains built through degree {}", max - 2, max - 1)
    } else {
        "no degree has both boundaries present".to_string()
    }
}

fn hh_cmd(cmd: HhCmd) -> Result<Value> {
    Ok(match cmd {
        HhCmd::Validate { algebra } => {
            let two = algebra::resolve_two(&algebra)?;
            let report = two.validate();
            json!({
                "valid_algebra": two.mu1.validate().is_valid(),
                "valid_two_algebra": report.is_valid(),
                "report": report,
            })
        }
        HhCmd::Betti { algebra, max, norm } => {
            let a = algebra::resolve(&algebra)?;
            let betti = bar::hh_betti_with(&a, max, norm.normalized())?;
            json!({ "betti": betti, "normalized": norm.normalized(), "truncation": trust_note(max) })
        }
        HhCmd::Hh0 { algebra } => json!(hochschild::hh0_direct(&algebra::resolve(&algebra)?)),
        HhCmd::Secondary { algebra, max, order, norm } => {
            let a = algebra::resolve_two(&algebra)?;
            let order: IterationOrder = parse(&order)?;
            let betti = secondary::secondary_hh_betti_with(
                &a,
                max,
                order,
                norm.normalized(),
                secondary::Totalization::Standard,
            )?;
            json!({
                "betti": betti,
                "order": order,
                "normalized": norm.normalized(),
                "truncation": trust_note(max),
            })
        }
        HhCmd::Rotations { algebra, p, q } => {
            let a = algebra::resolve_two(&algebra)?;
            let (t1, _) = hochschild::bicyclic_rotations(&a, p, q);
            let checks = secondary::rotation_identities(&a, IterationOrder::FirstMu1, p, q);
            json!({ "p": p, "q": q, "size": t1.rows(), "checks": checks })
        }
        HhCmd::Complex { algebra, max, norm } => {
            let a = algebra::resolve(&algebra)?;
            let c = hochschild::cyclic_bar(&a, max, norm.normalized())?;
            json!({
                "dims": c.dims(),
                "normalized": norm.normalized(),
                "identities": c.check_identities(),
            })
        }
    })
}

fn dispatch(cli: Cli) -> Result<(Value, bool)> {
    let value = match cli.command {
        Command::Braid(c) => braid_cmd(c)?,
        Command::Matrix(c) => matrix_cmd(c)?,
        Command::Cover(c) => cover_cmd(c)?,
        Command::Lattice(c) => lattice_cmd(c)?,
        Command::Orbit(c) => orbit_cmd(c)?,
        Command::Sd(c) => sd_cmd(c)?,
        Command::Hh(c) => hh_cmd(c)?,
        Command::Selftest { suite, seed } => {
            let report = selftest::run(&suite, seed)?;
            let passed = report.passed;
            return Ok((to_value(&report), passed));
        }
    };
    Ok((value, true))
}

/// Runs the CLI on `args` (including the program name), writing to the
/// given streams; returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write, pretty: bool) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{rendered}");
            } else {
                let _ = write!(err, "{rendered}");
            }
            return code;
        }
    };
    let pretty = pretty && !cli.json;
    match dispatch(cli) {
        Ok((value, passed)) => {
            let text = if pretty {
                serde_json::to_string_pretty(&value)
            } else {
                serde_json::to_string(&value)
            }
            .expect("JSON values serialize");
            let _ = writeln!(out, "{text}");
            if passed {
                0
            } else {
                let _ = writeln!(err, "error: selftest failed");
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_usage() {
                2
            } else {
                1
            }
        }
    }
}

pub fn main() -> i32 {
    let pretty = std::io::stdout().is_terminal();
    let mut out = std::io::stdout().lock();
    let mut err = std::io::stderr().lock();
    run(std::env::args_os(), &mut out, &mut err, pretty)
}
