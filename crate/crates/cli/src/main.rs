use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use leibniz_core::atlas::{self, AtlasOptions, AtlasPlan};
use leibniz_core::families::{self, FamilyParams};
use leibniz_core::field::{Field, FieldSpec, PrimeField, Rationals};
use leibniz_core::invariants::{self, ProfileOptions, SeriesKind, SeriesResult};
use leibniz_core::lattice::{self, export, LatticeCaps, SubalgebraLattice};
use leibniz_core::lbz::{self, AnyTable};
use leibniz_core::{with_table, Convention, Error, StructureTable};
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "lbz", version, about = "Exact computations with finite-dimensional Leibniz algebras")]
struct Cli {
    #[command(flatten)]
    run: RunFlags,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct RunFlags {
    /// Field for constructed algebras; for input files it must match the declared field.
    #[arg(long, global = true)]
    field: Option<String>,
    /// Convention to read tables in, overriding the file; default right.
    #[arg(long, global = true)]
    convention: Option<String>,
    /// Largest dimension whose subspaces may be enumerated.
    #[arg(long, global = true, default_value_t = 6)]
    max_dim: usize,
    /// Largest prime whose subspaces may be enumerated.
    #[arg(long, global = true, default_value_t = 7)]
    max_p: u32,
    #[arg(long, global = true, default_value_t = 5000)]
    max_nodes: usize,
    #[arg(long, global = true, default_value_t = 1_000_000)]
    max_gl_order: u128,
    /// Search height for cyclic generators over Q.
    #[arg(long, global = true, default_value_t = 3)]
    height: u32,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads; 0 lets the pool decide.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the Leibniz identity; exit 1 with a witness when it fails.
    Check { file: PathBuf },
    /// Structural invariants.
    Inv {
        file: PathBuf,
        #[arg(long)]
        kernel: bool,
        #[arg(long)]
        series: bool,
        #[arg(long)]
        radical: bool,
        #[arg(long)]
        all: bool,
    },
    /// Subalgebra lattice (prime fields only).
    Lattice {
        file: PathBuf,
        #[arg(long, conflicts_with = "json")]
        dot: bool,
        #[arg(long)]
        json: bool,
    },
    /// Algebra or lattice isomorphism; exit 1 when not isomorphic.
    Iso {
        first: PathBuf,
        second: PathBuf,
        #[arg(long, conflicts_with = "lattice")]
        algebra: bool,
        #[arg(long)]
        lattice: bool,
    },
    /// Emit a named family member as an LBZ document.
    Family {
        #[arg(value_enum)]
        name: FamilyName,
        /// Dimension (cyclic, abelian, almost-abelian).
        #[arg(long)]
        n: Option<usize>,
        /// Cyclic parameters alpha_2..alpha_n; zero when omitted.
        #[arg(long = "alpha", allow_hyphen_values = true)]
        alphas: Vec<String>,
        /// Block sizes of an almost nilpotent algebra, comma separated.
        #[arg(long, value_delimiter = ',')]
        rs: Vec<usize>,
    },
    /// Enumerate small algebras over prime fields and run the property reports.
    Atlas {
        dim: usize,
        #[arg(required = true)]
        primes: Vec<u32>,
        /// Seeded samples per prime for each of these dimensions.
        #[arg(long, value_delimiter = ',')]
        sample_dims: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        samples: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyName {
    Cyclic,
    Diamond,
    Abelian,
    AlmostAbelian,
    AlmostNilpotent,
    Heisenberg,
    Sl2,
}

struct Outcome {
    output: String,
    status: u8,
}

impl Outcome {
    fn ok(output: String) -> Self {
        Outcome { output, status: 0 }
    }

    fn verdict(output: String, yes: bool) -> Self {
        Outcome {
            output,
            status: if yes { 0 } else { 1 },
        }
    }
}

type CliResult<T> = Result<T, String>;

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

impl RunFlags {
    fn caps(&self) -> LatticeCaps {
        LatticeCaps {
            max_dim: self.max_dim,
            max_p: self.max_p,
            max_nodes: self.max_nodes,
        }
    }

    fn profile_options(&self) -> ProfileOptions {
        ProfileOptions {
            caps: self.caps(),
            rational_height: self.height,
        }
    }

    fn convention(&self) -> CliResult<Option<Convention>> {
        self.convention.as_deref().map(|s| s.parse::<Convention>().map_err(err)).transpose()
    }

    fn field_spec(&self) -> CliResult<Option<FieldSpec>> {
        self.field.as_deref().map(|s| s.parse::<FieldSpec>().map_err(err)).transpose()
    }
}

fn load(path: &Path, run: &RunFlags) -> CliResult<AnyTable> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let table = lbz::parse(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    if let Some(spec) = run.field_spec()? {
        if spec != table.spec() {
            return Err(format!("{}: declared field {} but --field {spec}", path.display(), table.spec()));
        }
    }
    Ok(match run.convention()? {
        Some(c) => match table {
            AnyTable::Rational(l) => AnyTable::Rational(l.with_convention(c)),
            AnyTable::Prime(l) => AnyTable::Prime(l.with_convention(c)),
        },
        None => table,
    })
}

fn pretty<T: ?Sized + serde::Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("documents serialize");
    s.push('\n');
    s
}

fn header<F: Field>(l: &StructureTable<F>) -> String {
    format!("convention: {}\nfield: {}\ndim: {}\n", l.convention(), l.field().spec(), l.dim())
}

fn header_json<F: Field>(l: &StructureTable<F>) -> serde_json::Map<String, Value> {
    let mut m = serde_json::Map::new();
    m.insert("convention".into(), json!(l.convention().as_str()));
    m.insert("field".into(), json!(l.field().spec().to_string()));
    m.insert("dim".into(), json!(l.dim()));
    m
}

fn no_dot<T>(cmd: &str) -> CliResult<T> {
    Err(format!("--format dot is only available for the lattice command, not {cmd}"))
}

fn cmd_check<F: Field>(l: &StructureTable<F>, format: Format) -> CliResult<Outcome> {
    let variant = l.convention().variant();
    let report = l.check_identity(variant);
    let witness = report.witness.as_ref().map(|w| {
        let lab = l.labels();
        let (i, j, k) = w.triple;
        (lab[i].clone(), lab[j].clone(), lab[k].clone(), l.render_vector(&w.defect))
    });
    let output = match format {
        Format::Dot => return no_dot("check"),
        Format::Json => {
            let mut m = header_json(l);
            m.insert("identity".into(), json!(variant.as_str()));
            m.insert("holds".into(), json!(report.holds));
            if let Some((x, y, z, d)) = &witness {
                m.insert("witness".into(), json!({ "x": x, "y": y, "z": z, "defect": d }));
            }
            pretty(&Value::Object(m))
        }
        Format::Text => {
            let mut s = header(l);
            match &witness {
                None => writeln!(s, "{} Leibniz identity holds", variant.as_str()).unwrap(),
                Some((x, y, z, d)) => {
                    writeln!(s, "{} Leibniz identity fails", variant.as_str()).unwrap();
                    writeln!(s, "witness: x = {x}, y = {y}, z = {z}, defect = {d}").unwrap();
                }
            }
            s
        }
    };
    Ok(Outcome::verdict(output, report.holds))
}

fn series_text<F: Field>(l: &StructureTable<F>, name: &str, s: &SeriesResult<F>) -> String {
    let terms: Vec<String> = s.terms.iter().map(|u| l.render_subspace(u)).collect();
    let tail = match (s.reaches_zero(), s.class_or_length) {
        (true, Some(k)) => format!("reaches 0, {} {k}", if name == "lower central" { "class" } else { "length" }),
        (true, None) => "reaches 0".into(),
        (false, _) => "stabilizes above 0".into(),
    };
    format!("{name} series: {} ({tail})\n", terms.join(" > "))
}

struct Selectors {
    kernel: bool,
    series: bool,
    radical: bool,
    all: bool,
}

fn cmd_inv<F: Field>(l: &StructureTable<F>, sel: &Selectors, run: &RunFlags) -> CliResult<Outcome> {
    if run.format == Format::Dot {
        return no_dot("inv");
    }
    let json = run.format == Format::Json;
    if sel.all {
        let p = invariants::profile(l, &run.profile_options()).map_err(err)?;
        let doc = p.document(l);
        if json {
            return Ok(Outcome::ok(pretty(&doc)));
        }
        let mut s = header(l);
        writeln!(s, "I = {}", doc.kernel).unwrap();
        writeln!(s, "centre = {}", doc.centre).unwrap();
        writeln!(s, "L^2 = {}", doc.square).unwrap();
        s.push_str(&series_text(l, "lower central", &p.lower_central));
        s.push_str(&series_text(l, "derived", &p.derived));
        let opt = |o: &Option<String>| o.clone().unwrap_or_else(|| "n/a (needs a prime field)".into());
        writeln!(s, "frattini = {}", opt(&doc.frattini)).unwrap();
        writeln!(s, "nilradical = {}", opt(&doc.nilradical)).unwrap();
        writeln!(s, "radical = {}", opt(&doc.radical)).unwrap();
        match &doc.minimal_ideals {
            Some(m) => writeln!(s, "minimal ideals: {}", m.join(", ")).unwrap(),
            None => writeln!(s, "minimal ideals: n/a (needs a prime field)").unwrap(),
        }
        let f = &doc.flags;
        let tri = |b: Option<bool>| b.map_or("unknown".to_string(), |b| b.to_string());
        writeln!(s, "lie: {}", f.is_lie).unwrap();
        writeln!(s, "nilpotent: {}", f.is_nilpotent).unwrap();
        writeln!(s, "solvable: {}", f.is_solvable).unwrap();
        writeln!(s, "supersolvable: {}", f.is_supersolvable).unwrap();
        match &doc.cyclic_generator {
            Some(g) => writeln!(s, "cyclic: {} (generator {g})", f.is_cyclic).unwrap(),
            None => writeln!(s, "cyclic: {}", f.is_cyclic).unwrap(),
        }
        writeln!(s, "simple: {}", tri(f.is_simple)).unwrap();
        writeln!(s, "semisimple: {}", tri(f.is_semisimple)).unwrap();
        writeln!(s, "quasi-abelian class: {}", f.quasi_abelian_class.as_str()).unwrap();
        return Ok(Outcome::ok(s));
    }
    let any = sel.kernel || sel.series || sel.radical;
    let (want_kernel, want_series, want_radical) = if any { (sel.kernel, sel.series, sel.radical) } else { (true, false, false) };
    let mut text = header(l);
    let mut m = header_json(l);
    if want_kernel {
        let k = invariants::leibniz_kernel(l).map_err(err)?;
        writeln!(text, "I = {}", l.render_subspace(&k)).unwrap();
        m.insert("kernel".into(), json!(l.render_subspace(&k)));
    }
    if want_series {
        for (kind, name, key) in [
            (SeriesKind::LowerCentral, "lower central", "lower_central"),
            (SeriesKind::Derived, "derived", "derived"),
        ] {
            let s = invariants::series(l, kind);
            text.push_str(&series_text(l, name, &s));
            m.insert(
                key.into(),
                json!({
                    "terms": s.terms.iter().map(|u| l.render_subspace(u)).collect::<Vec<_>>(),
                    "dims": s.dims(),
                    "stabilized": s.stabilized,
                    "class_or_length": s.class_or_length,
                }),
            );
        }
    }
    if want_radical {
        if l.field().elements().is_none() {
            return Err(format!("radical needs a prime field, got {}", l.field().spec()));
        }
        let lat = SubalgebraLattice::build(l, &run.caps()).map_err(err)?;
        let r = invariants::radical_in(&lat).map_err(err)?;
        let n = invariants::nilradical_in(&lat).map_err(err)?;
        writeln!(text, "radical = {}", l.render_subspace(&r)).unwrap();
        writeln!(text, "nilradical = {}", l.render_subspace(&n)).unwrap();
        m.insert("radical".into(), json!(l.render_subspace(&r)));
        m.insert("nilradical".into(), json!(l.render_subspace(&n)));
    }
    Ok(Outcome::ok(if json { pretty(&Value::Object(m)) } else { text }))
}

fn cmd_lattice(l: &StructureTable<PrimeField>, dot: bool, json_flag: bool, run: &RunFlags) -> CliResult<Outcome> {
    let lat = SubalgebraLattice::build(l, &run.caps()).map_err(err)?;
    let format = if dot {
        Format::Dot
    } else if json_flag {
        Format::Json
    } else {
        run.format
    };
    let output = match format {
        Format::Dot => format!("// convention: {}\n{}", l.convention(), export::to_dot(&lat)),
        Format::Json => {
            let mut m = header_json(l);
            m.insert("lattice".into(), serde_json::to_value(export::to_document(&lat)).expect("documents serialize"));
            pretty(&Value::Object(m))
        }
        Format::Text => {
            let mut s = header(l);
            writeln!(s, "nodes: {}", lat.len()).unwrap();
            for i in 0..lat.len() {
                let kind = l.classify_subspace(lat.node(i)).map_err(err)?;
                writeln!(s, "  {i}: {} [{}]", l.render_subspace(lat.node(i)), kind.as_str()).unwrap();
            }
            let covers: Vec<String> = lat.covers().iter().map(|(a, b)| format!("{a}<{b}")).collect();
            writeln!(s, "covers: {}", covers.join(" ")).unwrap();
            let (short, long) = lat.maximal_chain_lengths();
            writeln!(s, "maximal chain lengths: {short}, {long}").unwrap();
            s
        }
    };
    Ok(Outcome::ok(output))
}

fn cmd_iso(a: &AnyTable, b: &AnyTable, lattice_mode: bool, run: &RunFlags) -> CliResult<Outcome> {
    if run.format == Format::Dot {
        return no_dot("iso");
    }
    let (AnyTable::Prime(l1), AnyTable::Prime(l2)) = (a, b) else {
        return Err(Error::RequiresFiniteField("isomorphism testing", if let AnyTable::Prime(_) = a { b.spec() } else { a.spec() })
            .to_string());
    };
    if l1.field() != l2.field() {
        return Err(Error::MixedFields(l1.field().spec(), l2.field().spec()).to_string());
    }
    let mut m = header_json(l1);
    m.insert("second_convention".into(), json!(l2.convention().as_str()));
    let mut text = format!("convention: {} / {}\nfield: {}\n", l1.convention(), l2.convention(), l1.field().spec());
    let yes = if lattice_mode {
        let caps = run.caps();
        let la = SubalgebraLattice::build(l1, &caps).map_err(err)?;
        let lb = SubalgebraLattice::build(l2, &caps).map_err(err)?;
        let maps = lattice::enumerate_isomorphisms(la.order(), lb.order(), &[], None);
        m.insert("mode".into(), json!("lattice"));
        m.insert("isomorphic".into(), json!(!maps.is_empty()));
        m.insert("isomorphisms".into(), json!(maps.len()));
        let images: Vec<Vec<String>> = maps
            .iter()
            .map(|f| (0..la.len()).map(|i| l2.render_subspace(lb.node(f.apply(i)))).collect())
            .collect();
        m.insert("maps".into(), json!(images));
        writeln!(text, "nodes: {} / {}", la.len(), lb.len()).unwrap();
        if maps.is_empty() {
            writeln!(text, "subalgebra lattices are not isomorphic").unwrap();
        } else {
            writeln!(text, "subalgebra lattices are isomorphic ({} isomorphisms)", maps.len()).unwrap();
            for (k, f) in maps.iter().enumerate() {
                let pairs: Vec<String> = (0..la.len())
                    .map(|i| format!("{} -> {}", l1.render_subspace(la.node(i)), l2.render_subspace(lb.node(f.apply(i)))))
                    .collect();
                writeln!(text, "  map {k}: {}", pairs.join("; ")).unwrap();
            }
        }
        !maps.is_empty()
    } else {
        let g = atlas::algebra_isomorphic(l1, l2, run.max_gl_order).map_err(err)?;
        m.insert("mode".into(), json!("algebra"));
        m.insert("isomorphic".into(), json!(g.is_some()));
        match &g {
            Some(g) => {
                let cols: Vec<String> = (0..l1.dim())
                    .map(|j| {
                        let col: Vec<u32> = g.iter().map(|r| r[j]).collect();
                        format!("{} -> {}", l1.labels()[j], l2.render_vector(&col))
                    })
                    .collect();
                writeln!(text, "algebras are isomorphic: {}", cols.join(", ")).unwrap();
                m.insert("images".into(), json!(cols));
            }
            None => writeln!(text, "algebras are not isomorphic").unwrap(),
        }
        g.is_some()
    };
    let output = if run.format == Format::Json { pretty(&Value::Object(m)) } else { text };
    Ok(Outcome::verdict(output, yes))
}

fn family_params(name: FamilyName, n: Option<usize>, alphas: &[String], rs: &[usize]) -> CliResult<FamilyParams> {
    let need_n = |what: &str| n.ok_or_else(|| format!("family {what} needs --n"));
    Ok(match name {
        FamilyName::Cyclic => FamilyParams::Cyclic {
            n: need_n("cyclic")?,
            alphas: alphas.to_vec(),
        },
        FamilyName::Diamond => FamilyParams::Diamond,
        FamilyName::Abelian => FamilyParams::Abelian { n: need_n("abelian")? },
        FamilyName::AlmostAbelian => FamilyParams::AlmostAbelian {
            n: need_n("almost-abelian")?,
        },
        FamilyName::AlmostNilpotent => {
            if rs.is_empty() {
                return Err("family almost-nilpotent needs --rs".into());
            }
            FamilyParams::AlmostNilpotent { rs: rs.to_vec() }
        }
        FamilyName::Heisenberg => FamilyParams::Heisenberg,
        FamilyName::Sl2 => FamilyParams::Sl2,
    })
}

fn emit_family<F: Field>(field: &F, params: &FamilyParams, conv: Convention) -> CliResult<String> {
    let l = families::build_family(field, params).map_err(err)?;
    let l = match conv {
        Convention::Right => l,
        Convention::Left => l.opposite().with_convention(Convention::Left),
    };
    Ok(lbz::emit(&l))
}

fn cmd_atlas(dim: usize, primes: &[u32], sample_dims: &[usize], samples: usize, run: &RunFlags) -> CliResult<Outcome> {
    let conv = run.convention()?.unwrap_or_default();
    let opts = AtlasOptions {
        caps: run.caps(),
        max_gl_order: run.max_gl_order,
        rational_height: run.height,
        seed: run.seed,
        variant: conv.variant(),
        ..AtlasOptions::default()
    };
    let plan = AtlasPlan {
        max_dim: dim,
        primes: primes.to_vec(),
        sample_dims: sample_dims.to_vec(),
        samples_per_case: samples,
    };
    let (_, report) = atlas::run_atlas(&plan, &opts).map_err(err)?;
    let output = match run.format {
        Format::Json => report.to_json(),
        Format::Text => report.to_text(),
        Format::Dot => return no_dot("atlas"),
    };
    Ok(Outcome::verdict(output, report.ok))
}

fn dispatch(cli: &Cli) -> CliResult<Outcome> {
    let run = &cli.run;
    match &cli.command {
        Command::Check { file } => {
            let t = load(file, run)?;
            with_table!(&t, l => cmd_check(l, run.format))
        }
        Command::Inv {
            file,
            kernel,
            series,
            radical,
            all,
        } => {
            let t = load(file, run)?;
            let sel = Selectors {
                kernel: *kernel,
                series: *series,
                radical: *radical,
                all: *all,
            };
            with_table!(&t, l => cmd_inv(l, &sel, run))
        }
        Command::Lattice { file, dot, json } => match load(file, run)? {
            AnyTable::Prime(l) => cmd_lattice(&l, *dot, *json, run),
            AnyTable::Rational(_) => Err(Error::RequiresFiniteField("subalgebra lattice", FieldSpec::Rationals).to_string()),
        },
        Command::Iso {
            first,
            second,
            algebra: _,
            lattice,
        } => {
            let a = load(first, run)?;
            let b = load(second, run)?;
            cmd_iso(&a, &b, *lattice, run)
        }
        Command::Family { name, n, alphas, rs } => {
            if run.format != Format::Json && run.format != Format::Text {
                return no_dot("family");
            }
            let params = family_params(*name, *n, alphas, rs)?;
            let conv = run.convention()?.unwrap_or_default();
            let out = match run.field_spec()?.unwrap_or(FieldSpec::Rationals) {
                FieldSpec::Rationals => emit_family(&Rationals, &params, conv)?,
                FieldSpec::Prime(p) => emit_family(&PrimeField::new(p as u64).map_err(err)?, &params, conv)?,
            };
            Ok(Outcome::ok(out))
        }
        Command::Atlas {
            dim,
            primes,
            sample_dims,
            samples,
        } => cmd_atlas(*dim, primes, sample_dims, *samples, run),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.run.threads).build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let outcome = match pool.install(|| dispatch(&cli)) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let written = match &cli.run.out {
        Some(path) => std::fs::write(path, &outcome.output).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            print!("{}", outcome.output);
            Ok(())
        }
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(outcome.status)
}
