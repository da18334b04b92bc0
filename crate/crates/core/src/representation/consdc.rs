use serde::Serialize;

use crate::error::Result;
use crate::gradedspace::{MultiIndex, Subset};
use crate::linalg::{identity, residual};

use super::Representation;

/// Worst residual of each consequence of double commutation over a box.
#[derive(Clone, Debug, Serialize)]
pub struct ConsdcReport {
    /// `(I_m⊗T̃_n)(I_n⊗T̃_m^*) = T̃_m^*T̃_n` for `n∧m = 0`.
    pub part_i: f64,
    /// `(I_{n−p+q}⊗T̃_p^*T̃_p)(I_n⊗T̃_q^*T̃_q) = I_{n−p}⊗T̃_{p+q}^*T̃_{p+q}`.
    pub part_ii: f64,
    /// The step of the inclusion–exclusion induction.
    pub part_iii: f64,
    /// Commuting defect factors.
    pub part_iv: f64,
    pub cases: usize,
}

impl ConsdcReport {
    pub fn max(&self) -> f64 {
        self.part_i.max(self.part_ii).max(self.part_iii).max(self.part_iv)
    }
}

fn disjoint(a: &MultiIndex, b: &MultiIndex) -> bool {
    a.entries().iter().zip(b.entries()).all(|(&x, &y)| x.min(y) == 0)
}

/// Evaluates parts (i)–(iv) on every admissible configuration with grades in
/// the box `0 ≤ · ≤ bound`.
pub fn consdc_suite(rep: &Representation, bound: &MultiIndex) -> Result<ConsdcReport> {
    let k = rep.k();
    let zero = MultiIndex::zeros(k);
    let grades = bound.box_grades();
    let mut report = ConsdcReport {
        part_i: 0.0,
        part_ii: 0.0,
        part_iii: 0.0,
        part_iv: 0.0,
        cases: 0,
    };

    for n in &grades {
        for m in &grades {
            if !disjoint(n, m) || n.is_zero() || m.is_zero() {
                continue;
            }
            let tn = rep.ttilde(n)?;
            let tm = rep.ttilde(m)?;
            let inner = rep.lift(n, &tm.adjoint(), &zero, m)?;
            let outer = rep.lift(m, &tn, n, &zero)?;
            report.part_i = report.part_i.max(residual(&(outer * inner), &(tm.adjoint() * tn)));
            report.cases += 1;
        }
    }

    for n in &grades {
        for p in &grades {
            if !p.le(n) {
                continue;
            }
            for q in &grades {
                if !disjoint(p, q) {
                    continue;
                }
                let pq = p.add(q)?;
                let first = rep.lift(n, &rep.gram(q)?, q, q)?;
                let a = n.sub(p)?.add(q)?;
                let second = rep.lift(&a, &rep.gram(p)?, p, p)?;
                let rhs = rep.lift(&n.sub(p)?, &rep.gram(&pq)?, &pq, &pq)?;
                report.part_ii = report.part_ii.max(residual(&(second * first), &rhs));
                report.cases += 1;
            }
        }
    }

    for v in Subset::all(k) {
        for l in (0..k).filter(|&l| !v.contains(l)) {
            let ev = MultiIndex::indicator(k, v);
            let el = MultiIndex::unit(k, l);
            let evl = ev.add(&el)?;
            let dim = rep.system().word_dim(&evl.word()?) * rep.hdim();
            let defect_l = identity(dim) - rep.lift(&ev, &rep.gram(&el)?, &el, &el)?;
            for u in v.subsets() {
                let eu = MultiIndex::indicator(k, u);
                let eul = eu.add(&el)?;
                let gu = rep.lift(&evl.sub(&eu)?, &rep.gram(&eu)?, &eu, &eu)?;
                let gul = rep.lift(&ev.sub(&eu)?, &rep.gram(&eul)?, &eul, &eul)?;
                let lhs = &gu * &defect_l;
                report.part_iii = report.part_iii.max(residual(&lhs, &(gu - gul)));
                report.cases += 1;
            }
        }
    }

    for w in Subset::all(k) {
        for j in w.indices() {
            for l in w.indices().filter(|&l| l != j) {
                let ew = MultiIndex::indicator(k, w);
                let (ej, el) = (MultiIndex::unit(k, j), MultiIndex::unit(k, l));
                let fj = rep.lift(&ew.sub(&ej)?, &rep.gram(&ej)?, &ej, &ej)?;
                let fl = rep.lift(&ew.sub(&el)?, &rep.gram(&el)?, &el, &el)?;
                let ejl = ej.add(&el)?;
                let mid = rep.lift(&ew.sub(&ejl)?, &rep.gram(&ejl)?, &ejl, &ejl)?;
                let r = residual(&(&fj * &fl), &mid).max(residual(&(&fl * &fj), &mid));
                report.part_iv = report.part_iv.max(r);
                report.cases += 1;
            }
        }
    }
    Ok(report)
}
