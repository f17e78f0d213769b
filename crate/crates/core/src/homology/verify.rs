use super::HomologyStructure;
use crate::cooperad::{check_on_basis_of, CheckResult, CooperadError, Indices, Report};
use crate::exactlinalg::{FlipKind, GradedVec};

/// The axioms of a Gerstenhaber coalgebra, checked on transferred structure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GerstenhaberAxiom {
    Coassociativity,
    Counitality,
    Cocommutativity,
    Coantisymmetry,
    CoJacobi,
    CoLeibniz,
}

impl GerstenhaberAxiom {
    pub const ALL: [GerstenhaberAxiom; 6] = [
        GerstenhaberAxiom::Coassociativity,
        GerstenhaberAxiom::Counitality,
        GerstenhaberAxiom::Cocommutativity,
        GerstenhaberAxiom::Coantisymmetry,
        GerstenhaberAxiom::CoJacobi,
        GerstenhaberAxiom::CoLeibniz,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GerstenhaberAxiom::Coassociativity => "H: ∪ coassociative",
            GerstenhaberAxiom::Counitality => "H: ∪ counital",
            GerstenhaberAxiom::Cocommutativity => "H: τ∘∪ = ∪",
            GerstenhaberAxiom::Coantisymmetry => "H: ρ∘{-} = -{-}",
            GerstenhaberAxiom::CoJacobi => "H: coJacobi (ρ-based)",
            GerstenhaberAxiom::CoLeibniz => "H: coLeibniz",
        }
    }

    /// How far above the source degree the check reaches.
    fn reach(self) -> u32 {
        match self {
            GerstenhaberAxiom::Coassociativity | GerstenhaberAxiom::Counitality | GerstenhaberAxiom::Cocommutativity => 0,
            GerstenhaberAxiom::Coantisymmetry | GerstenhaberAxiom::CoLeibniz => 1,
            GerstenhaberAxiom::CoJacobi => 2,
        }
    }
}

type Sides = Result<(GradedVec, GradedVec), CooperadError>;

fn sides(h: &HomologyStructure, axiom: GerstenhaberAxiom, x: &GradedVec) -> Sides {
    let spaces = h.spaces();
    let cup = |v: &GradedVec, pos: usize| v.apply_leg(pos, &h.cup, spaces);
    let bracket = |v: &GradedVec, pos: usize| v.apply_leg(pos, &h.cobracket, spaces);
    let flip = |v: &GradedVec, pos: usize, kind: FlipKind| v.flip(pos, kind, spaces);
    let zero = GradedVec::zero(x.field());
    Ok(match axiom {
        GerstenhaberAxiom::Coassociativity => {
            let u = cup(x, 0)?;
            (cup(&u, 0)?, cup(&u, 1)?)
        }
        GerstenhaberAxiom::Counitality => {
            let u = cup(x, 0)?;
            (u.apply_leg(0, &h.counit_op(), spaces)?, x.clone())
        }
        GerstenhaberAxiom::Cocommutativity => {
            let u = cup(x, 0)?;
            (flip(&u, 0, FlipKind::Tau)?, u)
        }
        GerstenhaberAxiom::Coantisymmetry => {
            let b = bracket(x, 0)?;
            (flip(&b, 0, FlipKind::Rho)?, b.signed(1))
        }
        GerstenhaberAxiom::CoJacobi => {
            let a = bracket(&bracket(x, 0)?, 0)?;
            let xi = |v: &GradedVec| flip(&flip(v, 0, FlipKind::Rho)?, 1, FlipKind::Rho);
            let once = xi(&a)?;
            let twice = xi(&once)?;
            (a.add(&once).add(&twice), zero)
        }
        GerstenhaberAxiom::CoLeibniz => {
            let lhs = cup(&bracket(x, 0)?, 1)?;
            let u = cup(x, 0)?;
            let second = flip(&bracket(&u, 1)?, 0, FlipKind::Varrho)?;
            (lhs, bracket(&u, 0)?.add(&second))
        }
    })
}

/// Checks every axiom on every basis class. Source degrees whose check
/// reaches the provisional top degree are reported separately and do not
/// count towards the verdict.
pub fn verify_gerstenhaber(h: &HomologyStructure) -> Report {
    let r = &h.retraction;
    let mut report = Report::new("gerstenhaber");
    for axiom in GerstenhaberAxiom::ALL {
        let mut exact = CheckResult::new(axiom.name());
        let mut top = CheckResult::new(format!("{} [provisional top degree]", axiom.name()));
        for n in 0..=r.top() {
            if r.provisional == Some(n) {
                continue;
            }
            let touches_top = r.provisional.is_some_and(|p| n + axiom.reach() >= p);
            let target = if touches_top { &mut top } else { &mut exact };
            let idx = Indices::new(&[("n", n as i64)]);
            target.record(check_on_basis_of(h.spaces(), r.field, axiom.name(), idx.clone(), vec![], n, |x| sides(h, axiom, x)));
            if axiom == GerstenhaberAxiom::Counitality {
                // The other side separately, so characteristic 2 cannot hide a defect.
                target.record(check_on_basis_of(h.spaces(), r.field, axiom.name(), idx, vec![], n, |x| {
                    let u = x.apply_leg(0, &h.cup, h.spaces())?;
                    Ok((u.apply_leg(1, &h.counit_op(), h.spaces())?, x.clone()))
                }));
            }
        }
        report.push(exact);
        if top.total() > 0 {
            report.push(top.informational());
        }
    }
    report
}
