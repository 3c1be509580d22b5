//! Serializable reports behind the command-line tool, and the witness
//! re-verification entry points.

use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::autsplit::{is_aut_split, verify_complement, AutData};
use crate::catalog::{cyclic, direct_product, symmetric, GroupSpec};
use crate::error::{GroupError, Result};
use crate::lien::{
    a6_counterexample, all_kappas, enumerate_extensions_order2_gamma, is_neutral, section_witness,
    split_via_tower, verify_section_witness, A6Report, HypothesisCheck, Lien, SectionWitness,
    TowerStep, ENUMERATION_MAX_ORDER,
};
use crate::lietype::{is_aut_split_lie, psl2_verdicts, LieFamily, LieTypeParams, LieVerdict};
use crate::perm::Permutation;
use crate::permgroup::PermGroup;
use crate::structure::{composition_factors, CompositionFactor};

fn micros(start: Instant) -> u64 {
    start.elapsed().as_micros() as u64
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OuterClassSummary {
    pub label: String,
    pub aliases: Vec<String>,
    pub order_in_out: u32,
    pub min_element_order: u32,
}

/// Complement generators, each as the images of `F`'s generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplementWitness {
    pub degree: usize,
    pub f_generators: Vec<String>,
    pub generator_images: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalyzeReport {
    pub command: String,
    pub spec: String,
    pub degree: usize,
    pub order: u128,
    pub center_order: usize,
    pub composition_factors: Vec<CompositionFactor>,
    pub anti_solvable: bool,
    pub aut_order: u128,
    pub inn_order: u128,
    pub out_order: usize,
    pub outer_classes: Vec<OuterClassSummary>,
    pub aut_split: bool,
    pub complement: Option<ComplementWitness>,
    pub elapsed_us: u64,
}

fn class_summaries(aut: &AutData) -> Vec<OuterClassSummary> {
    aut.outer_classes()
        .iter()
        .map(|c| OuterClassSummary {
            label: c.label.clone(),
            aliases: c.aliases.clone(),
            order_in_out: c.order_in_out,
            min_element_order: c.min_element_order,
        })
        .collect()
}

fn cycles(perms: &[Permutation]) -> Vec<String> {
    perms.iter().map(|p| p.to_cycle_string()).collect()
}

pub fn analyze(spec_text: &str) -> Result<AnalyzeReport> {
    let start = Instant::now();
    let spec = GroupSpec::parse(spec_text)?;
    let g = spec.build()?;
    let series = composition_factors(&g)?;
    let aut = AutData::compute(&g)?;
    let verdict = is_aut_split(&aut)?;
    let complement = verdict.aut_split.then(|| ComplementWitness {
        degree: g.degree(),
        f_generators: cycles(g.generators()),
        generator_images: verdict
            .complement_generators
            .iter()
            .map(|c| cycles(&aut.generator_images(c)))
            .collect(),
    });
    Ok(AnalyzeReport {
        command: format!("analyze {spec_text}"),
        spec: spec.to_string(),
        degree: g.degree(),
        order: g.order(),
        center_order: aut.center_order(),
        anti_solvable: series.factors.iter().all(|f| !f.abelian),
        composition_factors: series.factors,
        aut_order: aut.aut_order(),
        inn_order: aut.inn_order(),
        out_order: aut.out_order(),
        outer_classes: class_summaries(&aut),
        aut_split: verdict.aut_split,
        complement,
        elapsed_us: micros(start),
    })
}

fn parse_perms(list: &[String], degree: usize) -> std::result::Result<Vec<Permutation>, String> {
    list.iter()
        .map(|s| Permutation::parse_cycles(s, degree).map_err(|e| e.to_string()))
        .collect()
}

/// Re-checks a complement witness against `F` built from its own generator list.
pub fn verify_complement_witness(w: &ComplementWitness) -> std::result::Result<(), String> {
    let degree = w.degree;
    let f = PermGroup::new(parse_perms(&w.f_generators, degree)?).map_err(|e| e.to_string())?;
    let aut = AutData::compute(&f).map_err(|e| e.to_string())?;
    let gens = w
        .generator_images
        .iter()
        .map(|imgs| {
            let perms = parse_perms(imgs, degree)?;
            aut.automorphism_from_generator_images(&perms)
                .map_err(|e| e.to_string())
        })
        .collect::<std::result::Result<Vec<_>, String>>()?;
    verify_complement(&aut, &gens)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LieReport {
    pub command: String,
    pub label: String,
    pub verdict: LieVerdict,
    pub elapsed_us: u64,
}

pub fn lie(family: &str, rank: u32, p: u64, m: u32) -> Result<LieReport> {
    let start = Instant::now();
    let fam = LieFamily::resolve(family, rank)?;
    let params = LieTypeParams::new(fam, rank, p, m)?;
    let verdict = is_aut_split_lie(&params)?;
    Ok(LieReport {
        command: format!("lie {family} {rank} {p} {m}"),
        label: format!("{}({})", params.label(), verdict.q),
        verdict,
        elapsed_us: micros(start),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KappaEntry {
    pub gamma_element: String,
    pub class: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerReport {
    pub split: bool,
    pub trace: Vec<TowerStep>,
    pub hypothesis: HypothesisCheck,
    pub agrees_with_search: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LienReport {
    pub command: String,
    pub f: String,
    pub gamma: String,
    pub out_order: usize,
    pub kappa: Vec<KappaEntry>,
    pub neutral: bool,
    pub section: Option<SectionWitness>,
    /// Present when no section exists.
    pub certificate: Option<String>,
    pub tower: TowerReport,
    /// Number of extension classes, computed when `|Gamma| = 2`.
    pub extension_classes: Option<usize>,
    pub elapsed_us: u64,
}

/// Parses `1:s,2:o3` into `(generator, label)` pairs with 1-based generators.
pub fn parse_kappa(text: &str) -> Result<Vec<(usize, String)>> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|item| {
            let (g, label) = item.split_once(':').ok_or_else(|| {
                GroupError::Parse(format!("kappa entry {item:?} is not gen:class"))
            })?;
            let g: usize = g
                .trim()
                .parse()
                .map_err(|_| GroupError::Parse(format!("bad generator index in {item:?}")))?;
            if g == 0 {
                return Err(GroupError::Parse("generator indices start at 1".into()));
            }
            Ok((g, label.trim().to_string()))
        })
        .collect()
}

/// Builds a lien from generator-class pairs; unnamed generators map to the trivial class.
pub fn lien_from_assignment(
    aut: Arc<AutData>,
    gamma: PermGroup,
    pairs: &[(usize, String)],
) -> Result<Lien> {
    let k = gamma.generators().len();
    let mut classes = vec![0u32; k];
    for (g, label) in pairs {
        if *g > k {
            return Err(GroupError::Parse(format!(
                "Gamma has {k} generators, not {g}"
            )));
        }
        let cls = aut
            .class_by_name(label)
            .ok_or_else(|| GroupError::Parse(format!("unknown outer class {label:?}")))?;
        classes[g - 1] = cls.index as u32;
    }
    Lien::from_generator_classes(aut, gamma, &classes)
}

fn lien_report(lien: &Lien, command: String, f: String, gamma: String) -> Result<LienReport> {
    let start = Instant::now();
    let aut = lien.aut();
    let gt = lien.gamma_table();
    let neutral = is_neutral(lien)?;
    let tower = split_via_tower(lien)?;
    let extension_classes = (gt.len() == 2 && aut.table().len() as u128 <= ENUMERATION_MAX_ORDER)
        .then(|| enumerate_extensions_order2_gamma(lien).map(|c| c.classes))
        .transpose()?;
    let certificate = (!neutral.neutral).then(|| {
        format!(
            "exhaustive search over lifts of the {} generator(s) of Gamma, each ranging over the {} elements of its coset of Inn(F), found no homomorphism lifting kappa",
            gt.generator_indices().len(),
            aut.inn_order()
        )
    });
    Ok(LienReport {
        command,
        f,
        gamma,
        out_order: aut.out_order(),
        kappa: gt
            .elements()
            .zip(lien.kappa())
            .map(|(g, &c)| KappaEntry {
                gamma_element: g.to_cycle_string(),
                class: aut.outer_classes()[c as usize].label.clone(),
            })
            .collect(),
        neutral: neutral.neutral,
        section: neutral.lift.as_ref().map(|l| section_witness(lien, l)),
        certificate,
        tower: TowerReport {
            split: tower.split,
            agrees_with_search: tower.split == neutral.neutral,
            trace: tower.trace,
            hypothesis: tower.hypothesis,
        },
        extension_classes,
        elapsed_us: micros(start),
    })
}

pub fn lien(f_text: &str, gamma_text: &str, kappa_text: &str) -> Result<LienReport> {
    let f_spec = GroupSpec::parse(f_text)?;
    let g_spec = GroupSpec::parse(gamma_text)?;
    let pairs = parse_kappa(kappa_text)?;
    let aut = Arc::new(AutData::compute(&f_spec.build()?)?);
    let lien = lien_from_assignment(aut, g_spec.build()?, &pairs)?;
    lien_report(
        &lien,
        format!("lien --f {f_text} --gamma {gamma_text} --kappa {kappa_text}"),
        f_spec.to_string(),
        g_spec.to_string(),
    )
}

/// Rebuilds the lien named in a report and re-verifies its section witness.
pub fn verify_lien_report(report: &LienReport) -> std::result::Result<(), String> {
    let Some(w) = &report.section else {
        return Ok(());
    };
    let build = || -> Result<Lien> {
        let f = GroupSpec::parse(&report.f)?.build()?;
        let gamma = GroupSpec::parse(&report.gamma)?.build()?;
        let aut = Arc::new(AutData::compute(&f)?);
        let gt = gamma.element_table()?;
        let kappa = gt
            .elements()
            .map(|g| {
                let text = g.to_cycle_string();
                let entry = report
                    .kappa
                    .iter()
                    .find(|e| e.gamma_element == text)
                    .ok_or_else(|| GroupError::Parse(format!("kappa has no entry for {text}")))?;
                aut.class_by_name(&entry.class)
                    .map(|c| c.index as u32)
                    .ok_or_else(|| GroupError::Parse(format!("unknown class {}", entry.class)))
            })
            .collect::<Result<Vec<u32>>>()?;
        Lien::new(aut, gamma, kappa)
    };
    let lien = build().map_err(|e| e.to_string())?;
    verify_section_witness(&lien, w)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrosscheckEntry {
    pub q: u32,
    pub lie: bool,
    pub search: bool,
    pub agree: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepCase {
    pub f: String,
    pub gamma: String,
    /// Outer class label of each generator of `Gamma`.
    pub kappa: Vec<String>,
    pub neutral: bool,
    pub tower_split: bool,
    pub hypothesis: bool,
    pub section_verified: bool,
    pub tower_section_verified: bool,
    pub trace: Vec<TowerStep>,
}

impl SweepCase {
    pub fn passed(&self) -> bool {
        self.neutral && self.tower_split && self.section_verified && self.tower_section_verified
    }
}

pub const SWEEP_KERNELS: [&str; 3] = ["A5", "PSL(2,7)", "A5 x A5"];
pub const SWEEP_GAMMAS: [&str; 4] = ["C2", "C3", "C2 x C2", "S3"];
pub const CROSSCHECK_Q: [u32; 6] = [4, 5, 7, 8, 9, 11];

fn gamma_group(name: &str) -> Result<PermGroup> {
    Ok(match name {
        "C2" => cyclic(2)?,
        "C3" => cyclic(3)?,
        "C2 x C2" => direct_product(&cyclic(2)?, &cyclic(2)?)?.group,
        "S3" => symmetric(3)?,
        other => GroupSpec::parse(other)?.build()?,
    })
}

/// Every lien over the sweep catalogue, evaluated in parallel and returned
/// sorted by `(F, Gamma, kappa)`.
pub fn lien_sweep() -> Result<Vec<SweepCase>> {
    let mut jobs = Vec::new();
    for f_name in SWEEP_KERNELS {
        let f = GroupSpec::parse(f_name)?.build()?;
        let aut = Arc::new(AutData::compute(&f)?);
        for g_name in SWEEP_GAMMAS {
            let gamma = gamma_group(g_name)?;
            for kappa in all_kappas(&aut, &gamma.element_table()?) {
                jobs.push((f_name, aut.clone(), g_name, gamma.clone(), kappa));
            }
        }
    }
    let mut cases = jobs
        .into_par_iter()
        .map(|(f_name, aut, g_name, gamma, kappa)| -> Result<SweepCase> {
            let lien = Lien::new(aut, gamma, kappa)?;
            let neutral = is_neutral(&lien)?;
            let tower = split_via_tower(&lien)?;
            let check = |lift: &Option<Vec<_>>| {
                lift.as_ref().is_some_and(|l| {
                    verify_section_witness(&lien, &section_witness(&lien, l)).is_ok()
                })
            };
            let aut = lien.aut();
            Ok(SweepCase {
                f: f_name.to_string(),
                gamma: g_name.to_string(),
                kappa: lien
                    .generator_classes()
                    .iter()
                    .map(|&c| aut.outer_classes()[c as usize].label.clone())
                    .collect(),
                neutral: neutral.neutral,
                tower_split: tower.split,
                hypothesis: tower.hypothesis.satisfied,
                section_verified: check(&neutral.lift),
                tower_section_verified: check(&tower.lift),
                trace: tower.trace,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    cases.sort_by(|a, b| (&a.f, &a.gamma, &a.kappa).cmp(&(&b.f, &b.gamma, &b.kappa)));
    Ok(cases)
}

pub fn psl2_crosscheck() -> Result<Vec<CrosscheckEntry>> {
    CROSSCHECK_Q
        .iter()
        .map(|&q| {
            let (lie, search) = psl2_verdicts(q)?;
            Ok(CrosscheckEntry {
                q,
                lie: lie.aut_split,
                search,
                agree: lie.aut_split == search,
            })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReproduceReport {
    pub command: String,
    pub a6: Option<A6Report>,
    pub crosscheck: Vec<CrosscheckEntry>,
    pub sweep: Vec<SweepCase>,
    pub sweep_total: usize,
    pub sweep_neutral: usize,
    /// Claims that failed, by name; empty on success.
    pub failures: Vec<String>,
    pub elapsed_us: u64,
}

/// Runs the A6 counterexample, the `PSL(2,q)` cross-check and the sweep.
pub fn reproduce() -> Result<ReproduceReport> {
    let start = Instant::now();
    let mut failures = Vec::new();
    let a6 = match a6_counterexample() {
        Ok(r) => Some(r),
        Err(e) => {
            failures.push(format!("A6 counterexample: {e}"));
            None
        }
    };
    let crosscheck = psl2_crosscheck()?;
    for c in crosscheck.iter().filter(|c| !c.agree) {
        failures.push(format!(
            "PSL(2,{}) closed form {} vs search {}",
            c.q, c.lie, c.search
        ));
    }
    let sweep = lien_sweep()?;
    for c in sweep.iter().filter(|c| !c.passed()) {
        failures.push(format!(
            "lien {} / {} / {:?} did not split with a verified section",
            c.f, c.gamma, c.kappa
        ));
    }
    Ok(ReproduceReport {
        command: "reproduce".into(),
        a6,
        crosscheck,
        sweep_total: sweep.len(),
        sweep_neutral: sweep.iter().filter(|c| c.neutral).count(),
        sweep,
        failures,
        elapsed_us: micros(start),
    })
}
