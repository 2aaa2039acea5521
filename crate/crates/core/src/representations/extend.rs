use super::construction::{box_points, GroupConstruction};
use super::group::FiniteAbelianGroup;
use crate::error::{Error, Result};
use crate::phase::Phase;
use crate::presentation::ThetaFamily;

pub const EXTEND_BUDGET: u128 = 1_000_000;

/// t and α defined on part of G.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialConstruction {
    pub group: FiniteAbelianGroup,
    pub t: Vec<Vec<Option<usize>>>,
    pub alpha: Vec<Vec<Option<Phase>>>,
}

impl PartialConstruction {
    pub fn empty(group: FiniteAbelianGroup) -> PartialConstruction {
        let (k, n) = (group.k(), group.order());
        PartialConstruction {
            group,
            t: vec![vec![None; n]; k],
            alpha: vec![vec![None; n]; k],
        }
    }

    pub fn set(&mut self, color: usize, g: usize, t: usize, alpha: Phase) {
        self.t[color - 1][g] = Some(t);
        self.alpha[color - 1][g] = Some(alpha);
    }

    pub fn defined(&self) -> usize {
        self.t.iter().flatten().filter(|x| x.is_some()).count()
    }
}

/// Data of `gc` on the box {Σ n_i g_i : 0 ≤ n_i ≤ T_i}, all colors.
pub fn restrict_to_box(gc: &GroupConstruction, bound: &[usize]) -> PartialConstruction {
    let mut out = PartialConstruction::empty(gc.group.clone());
    let ranges: Vec<usize> = bound.iter().map(|&b| b + 1).collect();
    for pt in box_points(&ranges) {
        let v: Vec<i64> = pt.iter().map(|&x| x as i64).collect();
        let g = gc.group.index(&v);
        for c in 1..=gc.k() {
            out.set(c, g, gc.t_at(c, g), gc.alpha_at(c, g));
        }
    }
    out
}

type Cells<T> = Vec<Vec<Option<T>>>;

fn put<T: PartialEq + Copy>(cells: &mut Cells<T>, color: usize, g: usize, v: T, changed: &mut bool) -> bool {
    match cells[color - 1][g] {
        Some(x) => x == v,
        None => {
            cells[color - 1][g] = Some(v);
            *changed = true;
            true
        }
    }
}

/// Closes t under the square relations; false on a contradiction.
fn propagate_t(p: &ThetaFamily, group: &FiniteAbelianGroup, t: &mut Cells<usize>) -> bool {
    let k = group.k();
    loop {
        let mut changed = false;
        for g in 0..group.order() {
            for i in 1..=k {
                for j in i + 1..=k {
                    let gi = group.minus(i, g);
                    let gj = group.minus(j, g);
                    let a = (t[i - 1][g], t[j - 1][gi]);
                    let b = (t[j - 1][g], t[i - 1][gj]);
                    if let (Some(x), Some(y)) = a {
                        // e^i_x e^j_y = e^j_{y'} e^i_{x'}
                        let (xs, ys) = p.theta(i, j, x, y);
                        if !put(t, j, g, ys, &mut changed) || !put(t, i, gj, xs, &mut changed) {
                            return false;
                        }
                    } else if let (Some(c), Some(d)) = b {
                        let (x, y) = p.theta_inv(i, j, d, c);
                        if !put(t, i, g, x, &mut changed) || !put(t, j, gi, y, &mut changed) {
                            return false;
                        }
                    }
                }
            }
        }
        if !changed {
            return true;
        }
    }
}

fn search(
    p: &ThetaFamily,
    group: &FiniteAbelianGroup,
    mut t: Cells<usize>,
    nodes: &mut u128,
    limit: u128,
) -> Result<Option<Cells<usize>>> {
    *nodes += 1;
    if *nodes > limit {
        return Err(Error::budget("extension search nodes", *nodes, limit));
    }
    if !propagate_t(p, group, &mut t) {
        return Ok(None);
    }
    let next = (0..group.order())
        .flat_map(|g| (1..=group.k()).map(move |c| (g, c)))
        .find(|&(g, c)| t[c - 1][g].is_none());
    let Some((g, c)) = next else {
        return Ok(Some(t));
    };
    for v in 1..=p.m()[c - 1] {
        let mut trial = t.clone();
        trial[c - 1][g] = Some(v);
        if let Some(done) = search(p, group, trial, nodes, limit)? {
            return Ok(Some(done));
        }
    }
    Ok(None)
}

/// 3-of-4 propagation of α^i_g + α^j_{g−g_i} = α^j_g + α^i_{g−g_j}.
fn propagate_alpha(group: &FiniteAbelianGroup, alpha: &mut Cells<Phase>) -> bool {
    let k = group.k();
    loop {
        let mut changed = false;
        for g in 0..group.order() {
            for i in 1..=k {
                for j in i + 1..=k {
                    let gi = group.minus(i, g);
                    let gj = group.minus(j, g);
                    let slots = [(i, g), (j, gi), (j, g), (i, gj)];
                    let vals: Vec<Option<Phase>> = slots.iter().map(|&(c, x)| alpha[c - 1][x]).collect();
                    let missing: Vec<usize> = (0..4).filter(|&s| vals[s].is_none()).collect();
                    match missing.as_slice() {
                        [] => {
                            let v: Vec<Phase> = vals.iter().map(|x| x.unwrap()).collect();
                            if v[0] + v[1] != v[2] + v[3] {
                                return false;
                            }
                        }
                        [s] => {
                            let v = |q: usize| vals[q].unwrap_or(Phase::ZERO);
                            let value = match s {
                                0 => v(2) + v(3) - v(1),
                                1 => v(2) + v(3) - v(0),
                                2 => v(0) + v(1) - v(3),
                                _ => v(0) + v(1) - v(2),
                            };
                            let (c, x) = slots[*s];
                            alpha[c - 1][x] = Some(value);
                            changed = true;
                        }
                        _ => {}
                    }
                }
            }
        }
        if !changed {
            return true;
        }
    }
}

/// Extends partial data to a construction on all of G.
///
/// t spreads through the square relations; when that stalls, the first
/// undefined slot (by element, then color) takes the smallest index that
/// does not lead to a contradiction. α spreads by 3-of-4 propagation and,
/// where free, takes the color's value at its first defined vertex (or 0).
pub fn extend_to_group(p: &ThetaFamily, partial: &PartialConstruction) -> Result<GroupConstruction> {
    let group = &partial.group;
    let k = group.k();
    if k != p.k() {
        return Err(Error::MixedPresentations);
    }
    for (c, row) in partial.t.iter().enumerate() {
        if row.iter().flatten().any(|&v| v == 0 || v > p.m()[c]) {
            return Err(Error::InvalidConstruction(format!("index out of range for color {}", c + 1)));
        }
    }
    let mut nodes = 0;
    let limit = crate::budget_from_env(EXTEND_BUDGET);
    let t = search(p, group, partial.t.clone(), &mut nodes, limit)?
        .ok_or_else(|| Error::InvalidConstruction("no extension of the partial t data".into()))?;

    let mut alpha = partial.alpha.clone();
    let defaults: Vec<Phase> = alpha
        .iter()
        .map(|row| row.iter().flatten().next().copied().unwrap_or(Phase::ZERO))
        .collect();
    loop {
        if !propagate_alpha(group, &mut alpha) {
            return Err(Error::InvalidConstruction("inconsistent scalar data".into()));
        }
        let next = (0..group.order())
            .flat_map(|g| (1..=k).map(move |c| (g, c)))
            .find(|&(g, c)| alpha[c - 1][g].is_none());
        match next {
            Some((g, c)) => alpha[c - 1][g] = Some(defaults[c - 1]),
            None => break,
        }
    }
    let gc = GroupConstruction {
        group: group.clone(),
        t: t.into_iter().map(|r| r.into_iter().map(|x| x.expect("filled")).collect()).collect(),
        alpha: alpha.into_iter().map(|r| r.into_iter().map(|x| x.expect("filled")).collect()).collect(),
    };
    if let Some(v) = gc.validate(p) {
        return Err(Error::InvalidConstruction(format!("extension fails validation: {v:?}")));
    }
    Ok(gc)
}

/// Extension with full symmetry containing H: the data is pushed to G/H,
/// extended there and pulled back.
pub fn extend_with_symmetry(
    p: &ThetaFamily,
    partial: &PartialConstruction,
    symmetry: &[Vec<i64>],
) -> Result<GroupConstruction> {
    let group = &partial.group;
    let quotient = group.quotient(symmetry)?;
    let proj: Vec<usize> = (0..group.order()).map(|g| quotient.index(&group.element(g))).collect();
    let mut down = PartialConstruction::empty(quotient.clone());
    for c in 0..group.k() {
        for g in 0..group.order() {
            let q = proj[g];
            if let Some(v) = partial.t[c][g] {
                if down.t[c][q].is_some_and(|x| x != v) {
                    return Err(Error::InvalidConstruction("partial t data is not H-symmetric".into()));
                }
                down.t[c][q] = Some(v);
            }
            if let Some(a) = partial.alpha[c][g] {
                if down.alpha[c][q].is_some_and(|x| x != a) {
                    return Err(Error::InvalidConstruction("partial α data is not H-symmetric".into()));
                }
                down.alpha[c][q] = Some(a);
            }
        }
    }
    let small = extend_to_group(p, &down)?;
    let gc = GroupConstruction {
        group: group.clone(),
        t: small.t.iter().map(|r| proj.iter().map(|&q| r[q]).collect()).collect(),
        alpha: small.alpha.iter().map(|r| proj.iter().map(|&q| r[q]).collect()).collect(),
    };
    for (c, row) in partial.t.iter().enumerate() {
        for (g, v) in row.iter().enumerate() {
            if v.is_some_and(|v| v != gc.t[c][g]) {
                return Err(Error::InvalidConstruction("extension does not restrict to the input".into()));
            }
        }
    }
    Ok(gc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::representations::construction::from_commuting_words;
    use crate::representations::decompose::full_symmetry_subgroup;

    fn example_27() -> (crate::Presentation, GroupConstruction) {
        let p = catalog::flip_forward_cycles();
        let w = vec![1, 1, 2];
        let gc = from_commuting_words(&p, &[w.clone(), w.clone(), w], &[Phase::new(1, 3); 3]).unwrap();
        (p, gc)
    }

    #[test]
    fn full_box_is_identity() {
        let (p, gc) = example_27();
        let partial = restrict_to_box(&gc, &[2, 2, 2]);
        assert_eq!(partial.defined(), 81);
        assert_eq!(extend_to_group(&p, &partial).unwrap(), gc);
    }

    #[test]
    fn axis_data_reproduces_commuting_word_construction() {
        let (p, gc) = example_27();
        let mut partial = PartialConstruction::empty(gc.group.clone());
        for c in 1..=3 {
            let mut v = vec![0i64; 3];
            for r in 0..3 {
                v[c - 1] = r;
                let g = gc.group.index(&v);
                partial.set(c, g, gc.t_at(c, g), gc.alpha_at(c, g));
            }
        }
        assert_eq!(extend_to_group(&p, &partial).unwrap(), gc);
    }

    #[test]
    fn symmetric_extension_keeps_symmetry() {
        let (p, gc) = example_27();
        let h: Vec<Vec<i64>> = full_symmetry_subgroup(&gc).iter().map(|&x| gc.group.element(x)).collect();
        let partial = restrict_to_box(&gc, &[1, 0, 0]);
        let out = extend_with_symmetry(&p, &partial, &h).unwrap();
        assert!(out.is_valid(&p));
        let sym = full_symmetry_subgroup(&out);
        for x in full_symmetry_subgroup(&gc) {
            assert!(sym.contains(&x));
        }
    }

    #[test]
    fn inconsistent_data_is_rejected() {
        let (p, gc) = example_27();
        let mut partial = restrict_to_box(&gc, &[2, 2, 2]);
        let g = gc.group.index(&[1, 1, 0]);
        partial.t[0][g] = Some(3 - gc.t_at(1, g));
        assert!(matches!(extend_to_group(&p, &partial), Err(Error::InvalidConstruction(_))));
    }
}
