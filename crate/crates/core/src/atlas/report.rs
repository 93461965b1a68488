use std::fmt::Write;

use serde::{Deserialize, Serialize};

use super::{cluster_by_fingerprint, enumerate_algebras, run_theorem_suite, sample_algebras, AtlasOptions, CorpusEntry, Mode, TheoremReport};
use crate::error::Result;
use crate::field::Field;
use crate::lattice::LatticeCaps;

/// What to put in the corpus.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtlasPlan {
    /// Full enumeration for every dimension `1..=max_dim`.
    pub max_dim: usize,
    pub primes: Vec<u32>,
    /// Seeded samples for these dimensions, `samples_per_case` per prime.
    pub sample_dims: Vec<usize>,
    pub samples_per_case: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportHeader {
    pub tool: String,
    pub version: String,
    pub convention: String,
    pub variant: String,
    pub seed: u64,
    pub caps: LatticeCaps,
    pub max_gl_order: u128,
    pub fields: Vec<String>,
    pub full_dims: Vec<usize>,
    pub sample_dims: Vec<usize>,
    pub samples_per_case: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntrySummary {
    pub id: String,
    pub field: String,
    pub dim: usize,
    pub iso_class_rep: bool,
    pub lattice_nodes: usize,
    pub kernel_dim: usize,
    pub flags: crate::invariants::ProfileFlags,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairSummary {
    pub a: String,
    pub b: String,
    pub algebra_isomorphic: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtlasReport {
    pub header: ReportHeader,
    pub corpus: Vec<EntrySummary>,
    pub fingerprint_clusters: usize,
    pub lattice_classes: usize,
    pub latiso_not_algiso: Vec<PairSummary>,
    pub theorems: Vec<TheoremReport>,
    /// False when an asserted report has violations.
    pub ok: bool,
}

pub fn build_corpus(plan: &AtlasPlan, opts: &AtlasOptions) -> Result<Vec<CorpusEntry>> {
    let mut corpus = Vec::new();
    for &p in &plan.primes {
        for dim in 1..=plan.max_dim {
            corpus.extend(enumerate_algebras(dim, p, opts)?);
        }
        for &dim in &plan.sample_dims {
            corpus.extend(sample_algebras(dim, p, plan.samples_per_case, opts)?);
        }
    }
    Ok(corpus)
}

pub fn run_atlas(plan: &AtlasPlan, opts: &AtlasOptions) -> Result<(Vec<CorpusEntry>, AtlasReport)> {
    let corpus = build_corpus(plan, opts)?;
    let clusters = cluster_by_fingerprint(&corpus, opts);
    let theorems = run_theorem_suite(&corpus, &clusters, opts);
    let report = AtlasReport {
        header: ReportHeader {
            tool: "lbz".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            convention: match opts.variant {
                crate::algebra::IdentityVariant::Left => "left",
                _ => "right",
            }
            .into(),
            variant: opts.variant.as_str().into(),
            seed: opts.seed,
            caps: opts.caps,
            max_gl_order: opts.max_gl_order,
            fields: plan.primes.iter().map(|p| format!("GF({p})")).collect(),
            full_dims: (1..=plan.max_dim).collect(),
            sample_dims: plan.sample_dims.clone(),
            samples_per_case: plan.samples_per_case,
        },
        corpus: corpus
            .iter()
            .map(|e| EntrySummary {
                id: e.id.clone(),
                field: e.field().spec().to_string(),
                dim: e.dim(),
                iso_class_rep: e.iso_class_rep,
                lattice_nodes: e.lattice.len(),
                kernel_dim: e.profile.kernel.dim(),
                flags: e.profile.flags.clone(),
            })
            .collect(),
        fingerprint_clusters: clusters.clusters.len(),
        lattice_classes: clusters.classes.len(),
        latiso_not_algiso: clusters
            .latiso_not_algiso
            .iter()
            .map(|p| PairSummary {
                a: corpus[p.a].id.clone(),
                b: corpus[p.b].id.clone(),
                algebra_isomorphic: p.algebra_isomorphic,
            })
            .collect(),
        ok: theorems.iter().all(|t| t.ok()),
        theorems,
    };
    Ok((corpus, report))
}

impl AtlasReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let h = &self.header;
        let mut s = String::new();
        writeln!(s, "{} {} atlas report", h.tool, h.version).unwrap();
        writeln!(s, "convention: {}  identity: {}  seed: {}", h.convention, h.variant, h.seed).unwrap();
        writeln!(
            s,
            "caps: dim {}  p {}  lattice nodes {}  GL order {}",
            h.caps.max_dim, h.caps.max_p, h.caps.max_nodes, h.max_gl_order
        )
        .unwrap();
        writeln!(s, "fields: {}  full dims: {:?}  sampled dims: {:?} x {}", h.fields.join(", "), h.full_dims, h.sample_dims, h.samples_per_case).unwrap();
        writeln!(s).unwrap();
        let mut counts: Vec<(String, usize, bool, usize)> = Vec::new();
        for e in &self.corpus {
            match counts.iter_mut().find(|c| c.0 == e.field && c.1 == e.dim && c.2 == e.iso_class_rep) {
                Some(c) => c.3 += 1,
                None => counts.push((e.field.clone(), e.dim, e.iso_class_rep, 1)),
            }
        }
        writeln!(s, "corpus: {} entries", self.corpus.len()).unwrap();
        for (field, dim, rep, k) in counts {
            writeln!(s, "  {field} dim {dim}: {k} {}", if rep { "isomorphism classes" } else { "samples" }).unwrap();
        }
        writeln!(
            s,
            "lattice fingerprints: {}  lattice classes: {}  lattice-isomorphic pairs not algebra-isomorphic: {}",
            self.fingerprint_clusters,
            self.lattice_classes,
            self.latiso_not_algiso.len()
        )
        .unwrap();
        writeln!(s).unwrap();
        for t in &self.theorems {
            let mode = match t.mode {
                Mode::Asserted => "asserted",
                Mode::Exploratory => "exploratory",
            };
            let verdict = if !t.violations.is_empty() && t.mode == Mode::Asserted { "FAIL" } else { "ok" };
            writeln!(
                s,
                "[{mode}] {}: population {}, passes {}, violations {} ({verdict})",
                t.theorem_id,
                t.population,
                t.passes,
                t.violations.len()
            )
            .unwrap();
            for n in &t.notes {
                writeln!(s, "    note: {n}").unwrap();
            }
            for v in &t.violations {
                writeln!(s, "    violation [{}] {}: {}", v.field, v.subjects.join(" -> "), v.detail).unwrap();
            }
        }
        writeln!(s).unwrap();
        writeln!(s, "result: {}", if self.ok { "all asserted checks pass" } else { "asserted check FAILED" }).unwrap();
        s
    }
}
