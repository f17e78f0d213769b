use std::fmt;
use std::io::Write;

use serde::Serialize;

use crate::cooperad::{Report, Witness};
use crate::derived::Family;
use crate::exactlinalg::{shape, BasedSpace, FieldSpec, GradedVec};
use crate::homology::{HomologyAnalysis, HomologyError};
use crate::instances::PresentationKind;

/// Per-identity counts inside a suite.
#[derive(Clone, Debug, Serialize)]
pub struct CheckSummary {
    pub identity: String,
    pub pass: usize,
    pub fail: usize,
    pub skip: usize,
    pub informational: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteOutput {
    pub name: String,
    pub pass: usize,
    pub fail: usize,
    pub skip: usize,
    /// First witnesses of counted failures, capped by `--witnesses`.
    pub witnesses: Vec<Witness>,
    pub checks: Vec<CheckSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dims: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl SuiteOutput {
    pub fn from_report(name: &str, report: &Report, k: usize) -> Self {
        let (pass, fail, skip) = report.totals();
        let witnesses = report
            .checks
            .iter()
            .filter(|c| !c.informational)
            .flat_map(|c| c.witnesses.iter().cloned())
            .take(k)
            .collect();
        let checks = report
            .checks
            .iter()
            .map(|c| CheckSummary {
                identity: c.identity.clone(),
                pass: c.pass,
                fail: c.fail,
                skip: c.skip,
                informational: c.informational,
                note: c.note.clone(),
            })
            .collect();
        SuiteOutput { name: name.into(), pass, fail, skip, witnesses, checks, dims: None, error: None }
    }

    /// A suite that could not run to completion, counted as one failure.
    pub fn from_error(name: &str, e: &HomologyError) -> Self {
        let witnesses = match e {
            HomologyError::NotAComplex { witness, .. }
            | HomologyError::NotChainMap { witness, .. }
            | HomologyError::NotWellDefined { witness, .. } => vec![(**witness).clone()],
            _ => Vec::new(),
        };
        SuiteOutput {
            name: name.into(),
            pass: 0,
            fail: 1,
            skip: 0,
            witnesses,
            checks: Vec::new(),
            dims: None,
            error: Some(e.to_string()),
        }
    }

    pub fn with_dims(mut self, dims: Vec<usize>) -> Self {
        self.dims = Some(dims);
        self
    }

    pub fn passed(&self) -> bool {
        self.fail == 0 && self.error.is_none()
    }
}

impl fmt::Display for SuiteOutput {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}] {} pass, {} fail, {} skip", self.name, self.pass, self.fail, self.skip)?;
        for c in &self.checks {
            let status = if c.fail > 0 {
                "FAIL"
            } else if c.pass == 0 && c.skip > 0 {
                "skip"
            } else {
                "ok"
            };
            let tag = if c.informational { " (informational)" } else { "" };
            writeln!(f, "  {status:<4} {}{tag}: {} pass, {} fail, {} skip", c.identity, c.pass, c.fail, c.skip)?;
            if let Some(note) = &c.note {
                writeln!(f, "       note: {note}")?;
            }
        }
        if let Some(dims) = &self.dims {
            writeln!(f, "  homology dims: {dims:?}")?;
        }
        if let Some(e) = &self.error {
            writeln!(f, "  error: {e}")?;
        }
        for w in &self.witnesses {
            writeln!(f, "  witness: {w}")?;
        }
        Ok(())
    }
}

/// The `check` report.
#[derive(Clone, Debug, Serialize)]
pub struct RunOutput {
    pub instance: String,
    pub field: String,
    #[serde(rename = "N")]
    pub truncation: u32,
    pub suites: Vec<SuiteOutput>,
}

impl RunOutput {
    pub fn new(instance: &str, field: FieldSpec, truncation: u32) -> Self {
        RunOutput { instance: instance.into(), field: field.to_string(), truncation, suites: Vec::new() }
    }

    pub fn push(&mut self, suite: SuiteOutput) {
        self.suites.push(suite);
    }

    pub fn passed(&self) -> bool {
        self.suites.iter().all(SuiteOutput::passed)
    }

    pub fn suite(&self, name: &str) -> Option<&SuiteOutput> {
        self.suites.iter().find(|s| s.name == name)
    }
}

impl fmt::Display for RunOutput {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} over {}, N = {}", self.instance, self.field, self.truncation)?;
        for s in &self.suites {
            write!(f, "{s}")?;
        }
        writeln!(f, "verdict: {}", if self.passed() { "pass" } else { "FAIL" })
    }
}

/// One tensor term `coefficient · left ⊗ right` of a structure map.
#[derive(Clone, Debug, Serialize)]
pub struct Term {
    pub coefficient: String,
    pub left: String,
    pub right: String,
}

/// The image of one homology class.
#[derive(Clone, Debug, Serialize)]
pub struct Image {
    pub source: String,
    pub terms: Vec<Term>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassOutput {
    pub label: String,
    pub degree: u32,
    pub representative: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct StructureOutput {
    pub classes: Vec<ClassOutput>,
    pub cup: Vec<Image>,
    /// Only sources whose image stays within the exact degrees.
    pub cobracket: Vec<Image>,
    pub counit: Vec<Term>,
}

/// The `homology` report.
#[derive(Clone, Debug, Serialize)]
pub struct HomologyOutput {
    pub instance: String,
    pub field: String,
    #[serde(rename = "N")]
    pub truncation: u32,
    pub dims: Vec<usize>,
    pub passed: bool,
    pub pass: usize,
    pub fail: usize,
    pub skip: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub structure: Option<StructureOutput>,
}

fn images(m: &Family, spaces: &[BasedSpace], sources: std::ops::RangeInclusive<u32>) -> Vec<Image> {
    let mut out = Vec::new();
    for n in sources {
        let Some(comps) = m.get(n) else { continue };
        for j in 0..spaces[n as usize].dim() {
            let mut terms = Vec::new();
            for (legs, map) in &comps.components {
                let (a, b) = (legs[0] as usize, legs[1] as usize);
                let db = spaces[b].dim();
                for (idx, c) in map.column(j).entries() {
                    terms.push(Term {
                        coefficient: c.to_string(),
                        left: spaces[a].label(idx / db),
                        right: spaces[b].label(idx % db),
                    });
                }
            }
            out.push(Image { source: spaces[n as usize].label(j), terms });
        }
    }
    out
}

impl HomologyOutput {
    pub fn new(instance: &str, field: FieldSpec, a: &HomologyAnalysis, structure: bool) -> Self {
        let (pass, fail, skip) = a.report.totals();
        let structure = structure.then(|| {
            let h = &a.structure;
            let spaces = h.spaces();
            let top = a.degree;
            let classes = (0..=top)
                .flat_map(|n| {
                    let incl = &h.retraction.inclusion[n as usize];
                    (0..spaces[n as usize].dim()).map(move |j| (n, j, incl.column(j).clone()))
                })
                .map(|(n, j, col)| ClassOutput {
                    label: spaces[n as usize].label(j),
                    degree: n,
                    representative: GradedVec::from_part(field, shape(&[n]), col).render(a.complex.spaces()),
                })
                .collect();
            let counit = (0..spaces[0].dim())
                .map(|j| Term { coefficient: h.counit.entry(0, j).to_string(), left: spaces[0].label(j), right: "1".into() })
                .collect();
            StructureOutput {
                classes,
                cup: images(&h.cup, spaces, 0..=top),
                cobracket: if top == 0 { Vec::new() } else { images(&h.cobracket, spaces, 0..=top - 1) },
                counit,
            }
        });
        HomologyOutput {
            instance: instance.into(),
            field: field.to_string(),
            truncation: a.degree,
            dims: a.dims(),
            passed: a.report.passed(),
            pass,
            fail,
            skip,
            structure,
        }
    }
}

fn write_images(f: &mut fmt::Formatter<'_>, title: &str, images: &[Image]) -> fmt::Result {
    writeln!(f, "{title}:")?;
    for img in images {
        let terms: Vec<String> =
            img.terms.iter().map(|t| format!("{}·{}⊗{}", t.coefficient, t.left, t.right)).collect();
        let rhs = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
        writeln!(f, "  {} ↦ {rhs}", img.source)?;
    }
    Ok(())
}

impl fmt::Display for HomologyOutput {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} over {}, N = {}", self.instance, self.field, self.truncation)?;
        writeln!(f, "dims: {:?}", self.dims)?;
        if let Some(s) = &self.structure {
            writeln!(f, "classes:")?;
            for c in &s.classes {
                writeln!(f, "  {} = [{}]", c.label, c.representative)?;
            }
            write_images(f, "∪", &s.cup)?;
            write_images(f, "{-}", &s.cobracket)?;
            let counit: Vec<String> = s.counit.iter().map(|t| format!("{} ↦ {}", t.left, t.coefficient)).collect();
            writeln!(f, "counit: {}", counit.join(", "))?;
        }
        writeln!(
            f,
            "checks: {} pass, {} fail, {} skip ({})",
            self.pass,
            self.fail,
            self.skip,
            if self.passed { "pass" } else { "FAIL" }
        )
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ListEntry {
    pub name: &'static str,
    pub kind: PresentationKind,
    pub field: String,
    pub description: &'static str,
}

pub fn write_list(out: &mut dyn Write, rows: &[ListEntry], suites: &[(&str, &str)]) -> std::io::Result<()> {
    writeln!(out, "builtins:")?;
    for r in rows {
        let kind = match r.kind {
            PresentationKind::Bialgebra => "bialgebra",
            PresentationKind::Frobenius => "frobenius",
        };
        writeln!(out, "  {:<20} {:<10} {:<3} {}", r.name, kind, r.field, r.description)?;
    }
    writeln!(out, "suites:")?;
    for (name, what) in suites {
        writeln!(out, "  {name:<10} {what}")?;
    }
    Ok(())
}
