use std::collections::VecDeque;

use super::construction::GroupConstruction;
use crate::phase::Phase;

/// Equivalent construction with the same t and constant α^i.
///
/// The loop phases ψ on the HNF rows of K fix Σ_j d_j α_j for each row d;
/// back-substitution from the last row takes principal roots at the pivots.
/// A construction whose α is already constant is returned unchanged.
pub fn normalize_scalars(gc: &GroupConstruction) -> GroupConstruction {
    if gc.constant_alphas().is_some() {
        return gc.clone();
    }
    let k = gc.k();
    let basis = &gc.group.relations().basis;
    let mut alpha = vec![Phase::ZERO; k];
    for i in (0..k).rev() {
        let row = &basis[i];
        let psi = gc.loop_phase(row).expect("basis row lies in K");
        let mut target = psi;
        for j in i + 1..k {
            target = target - alpha[j].times(row[j]);
        }
        alpha[i] = target.root(row[i]);
    }
    let n = gc.dimension();
    GroupConstruction {
        group: gc.group.clone(),
        t: gc.t.clone(),
        alpha: alpha.into_iter().map(|a| vec![a; n]).collect(),
    }
}

/// λ with a.rescale(λ) = b and λ_0 = 0, if a and b share t and differ by a
/// diagonal rescaling.
pub fn equivalence_gauge(a: &GroupConstruction, b: &GroupConstruction) -> Option<Vec<Phase>> {
    if a.group != b.group || a.t != b.t {
        return None;
    }
    let n = a.dimension();
    let mut lambda: Vec<Option<Phase>> = vec![None; n];
    lambda[0] = Some(Phase::ZERO);
    let mut queue = VecDeque::from([0usize]);
    while let Some(g) = queue.pop_front() {
        let lg = lambda[g].expect("visited");
        for c in 1..=a.k() {
            // b^c_h = a^c_h + λ_{h−g_c} − λ_h along the edge g → h
            let h = a.group.plus(c, g);
            if lambda[h].is_none() {
                lambda[h] = Some(a.alpha_at(c, h) + lg - b.alpha_at(c, h));
                queue.push_back(h);
            }
        }
    }
    let lambda: Vec<Phase> = lambda.into_iter().collect::<Option<_>>()?;
    (a.rescale(&lambda) == *b).then_some(lambda)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::representations::construction::from_commuting_words;

    #[test]
    fn rescaled_constant_construction_normalizes_back() {
        let p = catalog::flip_forward_cycles();
        let w = vec![1, 1, 2];
        let base = from_commuting_words(&p, &[w.clone(), w.clone(), w], &[Phase::ZERO; 3]).unwrap();
        let lambda: Vec<Phase> = (0..27).map(|g| Phase::new((g * g) as i64, 7)).collect();
        let twisted = base.rescale(&lambda);
        assert!(twisted.is_valid(&p));
        assert!(twisted.constant_alphas().is_none());
        let back = normalize_scalars(&twisted);
        assert!(back.is_valid(&p));
        assert!(back.constant_alphas().is_some());
        assert!(equivalence_gauge(&twisted, &back).is_some());
    }
}
