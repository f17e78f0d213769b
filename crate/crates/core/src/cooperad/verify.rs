use rayon::prelude::*;

use super::{key_name, CheckResult, ComultiplicationTriple, CooperadError, Indices, Outcome, Report, TruncatedCooperad};
use crate::exactlinalg::{FlipKind, GradedVec};

pub const IDENTITY_COUNIT_LEFT: &str = "counitality (ε⊗id)Δ(1,n,1) = id";
pub const IDENTITY_COUNIT_RIGHT: &str = "counitality (id⊗ε)Δ(n,1,i) = id";
pub const IDENTITY_COASSOC_GENERIC: &str = "coassociativity (generic case)";
pub const IDENTITY_COASSOC_R0: &str = "coassociativity (r = 0)";
pub const IDENTITY_COASSOC_Q0: &str = "coassociativity (q = 0, first equation)";
pub const IDENTITY_COASSOC_EQ2: &str = "coassociativity (q = 0, second equation)";
pub const IDENTITY_COASSOC_QR0: &str = "coassociativity (q = r = 0)";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CoassocFamily {
    Generic,
    R0,
    Q0,
    Q0Second,
    QR0,
}

impl CoassocFamily {
    pub fn identity(self) -> &'static str {
        match self {
            CoassocFamily::Generic => IDENTITY_COASSOC_GENERIC,
            CoassocFamily::R0 => IDENTITY_COASSOC_R0,
            CoassocFamily::Q0 => IDENTITY_COASSOC_Q0,
            CoassocFamily::Q0Second => IDENTITY_COASSOC_EQ2,
            CoassocFamily::QR0 => IDENTITY_COASSOC_QR0,
        }
    }

    pub const ALL: [CoassocFamily; 5] = [
        CoassocFamily::Generic,
        CoassocFamily::R0,
        CoassocFamily::Q0,
        CoassocFamily::Q0Second,
        CoassocFamily::QR0,
    ];
}

/// One coassociativity relation. For the second `q = 0` equation the
/// fields mean `(id⊗Δ_{r,0,i})Δ_{p,r-1,j} = (Δ_{p,r,j}⊗id)Δ_{p+r-1,0,i+j-1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoassocTuple {
    pub family: CoassocFamily,
    pub p: u32,
    pub q: u32,
    pub r: u32,
    pub i: u32,
    pub j: u32,
}

impl CoassocTuple {
    /// Arity of the input space.
    pub fn source(&self) -> u32 {
        self.p + self.q + self.r - 2
    }

    pub fn indices(&self) -> Indices {
        Indices::new(&[
            ("p", self.p as i64),
            ("q", self.q as i64),
            ("r", self.r as i64),
            ("i", self.i as i64),
            ("j", self.j as i64),
        ])
    }

    /// The decompositions used on both sides, in evaluation order.
    pub fn keys(&self) -> Vec<(u32, u32, u32)> {
        let CoassocTuple { p, q, r, i, j, .. } = *self;
        if self.family == CoassocFamily::Q0Second {
            return vec![(p, r - 1, j), (r, 0, i), (p + r - 1, 0, i + j - 1), (p, r, j)];
        }
        let mut keys = vec![(p + q - 1, r, j), (p, q, i)];
        if i + q <= j {
            keys.extend([(p + r - 1, q, i), (p, r, j - q + 1)]);
        } else if i <= j {
            keys.extend([(p, q + r - 1, i), (q, r, j - i + 1)]);
        } else {
            keys.extend([(p + r - 1, q, i + r - 1), (p, r, j)]);
        }
        keys
    }

    /// Both sides applied to `x`.
    pub fn sides(&self, c: &TruncatedCooperad, x: &GradedVec) -> Result<(GradedVec, GradedVec), CooperadError> {
        let CoassocTuple { p, q, r, i, j, .. } = *self;
        if self.family == CoassocFamily::Q0Second {
            let lhs = c.apply_delta(&c.apply_delta(x, 0, p, r - 1, j)?, 1, r, 0, i)?;
            let rhs = c.apply_delta(&c.apply_delta(x, 0, p + r - 1, 0, i + j - 1)?, 0, p, r, j)?;
            return Ok((lhs, rhs));
        }
        let lhs = c.apply_delta(&c.apply_delta(x, 0, p + q - 1, r, j)?, 0, p, q, i)?;
        let rhs = if i + q <= j {
            let y = c.apply_delta(&c.apply_delta(x, 0, p + r - 1, q, i)?, 0, p, r, j + 1 - q)?;
            y.flip(1, FlipKind::Sigma, c.spaces())?
        } else if i <= j {
            c.apply_delta(&c.apply_delta(x, 0, p, q + r - 1, i)?, 1, q, r, j + 1 - i)?
        } else {
            let y = c.apply_delta(&c.apply_delta(x, 0, p + r - 1, q, i + r - 1)?, 0, p, r, j)?;
            y.flip(1, FlipKind::Sigma, c.spaces())?
        };
        Ok((lhs, rhs))
    }
}

/// Every coassociativity relation whose input arity `p+q+r-2` lies in
/// `0..=truncation`. Relations needing spaces beyond the truncation are
/// included; the verifier reports them as skipped.
pub fn coassociativity_tuples(truncation: u32) -> Vec<CoassocTuple> {
    let n = truncation;
    let mut out = Vec::new();
    for p in 1..=n + 2 {
        for q in 0..=n + 2 {
            for r in 0..=n + 2 {
                let total = p + q + r;
                if total < 2 || total - 2 > n {
                    continue;
                }
                let family = match (q == 0, r == 0) {
                    (false, false) => CoassocFamily::Generic,
                    (false, true) => CoassocFamily::R0,
                    (true, false) => CoassocFamily::Q0,
                    (true, true) => CoassocFamily::QR0,
                };
                for i in 1..=p {
                    for j in 1..(p + q) {
                        out.push(CoassocTuple { family, p, q, r, i, j });
                    }
                }
                if q == 0 && r >= 1 {
                    for j in 1..=p {
                        for i in 1..=r {
                            out.push(CoassocTuple { family: CoassocFamily::Q0Second, p, q, r, i, j });
                        }
                    }
                }
            }
        }
    }
    out
}

fn counitality(c: &TruncatedCooperad) -> (CheckResult, CheckResult) {
    let n = c.truncation();
    let mut left = CheckResult::new(IDENTITY_COUNIT_LEFT);
    for m in 0..=n {
        let outcome = c.check_on_basis(
            IDENTITY_COUNIT_LEFT,
            Indices::new(&[("n", m as i64)]),
            vec![key_name((1, m, 1))],
            m,
            |x| {
                let y = c.apply_delta(x, 0, 1, m, 1)?;
                Ok((c.apply_functional(&y, 0, 1, c.counit())?, x.clone()))
            },
        );
        left.record(outcome);
    }
    let mut right = CheckResult::new(IDENTITY_COUNIT_RIGHT);
    for m in 1..=n {
        for i in 1..=m {
            let outcome = c.check_on_basis(
                IDENTITY_COUNIT_RIGHT,
                Indices::new(&[("n", m as i64), ("i", i as i64)]),
                vec![key_name((m, 1, i))],
                m,
                |x| {
                    let y = c.apply_delta(x, 0, m, 1, i)?;
                    Ok((c.apply_functional(&y, 1, 1, c.counit())?, x.clone()))
                },
            );
            right.record(outcome);
        }
    }
    (left, right)
}

/// Counitality and every coassociativity relation within the truncation.
pub fn verify_cooperad_axioms(c: &TruncatedCooperad) -> Report {
    let mut report = Report::new("cooperad");
    let (left, right) = counitality(c);
    report.push(left);
    report.push(right);
    let tuples = coassociativity_tuples(c.truncation());
    let outcomes: Vec<(CoassocFamily, Outcome)> = tuples
        .par_iter()
        .map(|t| {
            let maps = t.keys().into_iter().map(key_name).collect();
            let outcome = c.check_on_basis(t.family.identity(), t.indices(), maps, t.source(), |x| t.sides(c, x));
            (t.family, outcome)
        })
        .collect();
    for family in CoassocFamily::ALL {
        let mut check = CheckResult::new(family.identity());
        for (f, o) in &outcomes {
            if *f == family {
                check.record(o.clone());
            }
        }
        report.push(check);
    }
    report
}

pub const IDENTITY_COMULT_COASSOC: &str = "comultiplication: (μᶜ⊗μᶜ)Δ(2,2,1) = (μᶜ⊗μᶜ)Δ(2,2,2)";
pub const IDENTITY_COMULT_COUNIT: &str = "comultiplication: (μᶜ⊗eᶜ)Δ(2,0,i) = 𝟙ᶜ";
pub const IDENTITY_COMULT_ONE: &str = "𝟙ᶜ equals the cooperad counit";

/// The defining identities of a comultiplication on `c`.
pub fn verify_comultiplication(c: &TruncatedCooperad, t: &ComultiplicationTriple) -> Report {
    let mut report = Report::new("comultiplication");
    let mut coassoc = CheckResult::new(IDENTITY_COMULT_COASSOC);
    coassoc.record(c.check_on_basis(
        IDENTITY_COMULT_COASSOC,
        Indices::new(&[("n", 3)]),
        vec![key_name((2, 2, 1)), key_name((2, 2, 2))],
        3,
        |x| {
            let side = |i| -> Result<GradedVec, CooperadError> {
                let y = c.apply_delta(x, 0, 2, 2, i)?;
                let y = c.apply_functional(&y, 1, 2, &t.mu)?;
                c.apply_functional(&y, 0, 2, &t.mu)
            };
            Ok((side(1)?, side(2)?))
        },
    ));
    report.push(coassoc);

    let mut counit = CheckResult::new(IDENTITY_COMULT_COUNIT);
    for i in 1..=2 {
        counit.record(c.check_on_basis(
            IDENTITY_COMULT_COUNIT,
            Indices::new(&[("i", i)]),
            vec![key_name((2, 0, i as u32))],
            1,
            |x| {
                let y = c.apply_delta(x, 0, 2, 0, i as u32)?;
                let y = c.apply_functional(&y, 1, 0, &t.unit)?;
                let lhs = c.apply_functional(&y, 0, 2, &t.mu)?;
                Ok((lhs, c.apply_functional(x, 0, 1, &t.one)?))
            },
        ));
    }
    report.push(counit);

    let mut one = CheckResult::new(IDENTITY_COMULT_ONE);
    one.record(c.check_on_basis(IDENTITY_COMULT_ONE, Indices::default(), vec![], 1, |x| {
        Ok((c.apply_functional(x, 0, 1, &t.one)?, c.apply_functional(x, 0, 1, c.counit())?))
    }));
    report.push(one);
    report
}
