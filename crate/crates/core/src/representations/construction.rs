use serde::{Deserialize, Serialize};

use super::group::{FiniteAbelianGroup, GroupJson};
use crate::error::{Error, Result};
use crate::phase::Phase;
use crate::presentation::ThetaFamily;
use crate::word::{Generator, Multidegree, Word};

/// σ(e^i_t)ξ_{g−g_i} = δ_{t,t^i_g} α^i_g ξ_g on ℓ²(G).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupConstruction {
    pub group: FiniteAbelianGroup,
    /// t[i-1][g] ∈ 1..=m_i
    pub t: Vec<Vec<usize>>,
    /// α[i-1][g] as a phase
    pub alpha: Vec<Vec<Phase>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    IndexOutOfRange,
    Words,
    Scalars,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub kind: ViolationKind,
    /// representative of g
    pub g: Vec<i64>,
    pub i: usize,
    pub j: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupConstructionJson {
    pub group: GroupJson,
    /// one table per color, indexed by element in lexicographic order of representatives
    pub t: Vec<Vec<usize>>,
    pub alpha: Vec<Vec<Phase>>,
}

impl GroupConstruction {
    pub fn k(&self) -> usize {
        self.group.k()
    }

    pub fn dimension(&self) -> usize {
        self.group.order()
    }

    pub fn t_at(&self, color: usize, g: usize) -> usize {
        self.t[color - 1][g]
    }

    pub fn alpha_at(&self, color: usize, g: usize) -> Phase {
        self.alpha[color - 1][g]
    }

    /// Some(α_i) per color when every α^i is constant.
    pub fn constant_alphas(&self) -> Option<Vec<Phase>> {
        self.alpha
            .iter()
            .map(|a| {
                let first = a[0];
                a.iter().all(|&x| x == first).then_some(first)
            })
            .collect()
    }

    /// First failure of e^i_{t^i_g} e^j_{t^j_{g−g_i}} = e^j_{t^j_g} e^i_{t^i_{g−g_j}}
    /// or of α^i_g α^j_{g−g_i} = α^j_g α^i_{g−g_j}, scanning g in order.
    pub fn validate(&self, p: &ThetaFamily) -> Option<Violation> {
        let k = self.k();
        let n = self.dimension();
        let at = |kind, g: usize, i, j| Violation {
            kind,
            g: self.group.element(g),
            i,
            j,
        };
        for g in 0..n {
            for i in 1..=k {
                let t = self.t_at(i, g);
                if t == 0 || t > p.m()[i - 1] {
                    return Some(at(ViolationKind::IndexOutOfRange, g, i, i));
                }
            }
        }
        for g in 0..n {
            for i in 1..=k {
                for j in i + 1..=k {
                    let gi = self.group.minus(i, g);
                    let gj = self.group.minus(j, g);
                    // e^i_a e^j_b is already ascending; bring e^j_c e^i_d to that form
                    let (a, b) = (self.t_at(i, g), self.t_at(j, gi));
                    let (c, d) = (self.t_at(j, g), self.t_at(i, gj));
                    let (s, t) = p.theta_inv(i, j, d, c);
                    if (s, t) != (a, b) {
                        return Some(at(ViolationKind::Words, g, i, j));
                    }
                    let lhs = self.alpha_at(i, g) + self.alpha_at(j, gi);
                    let rhs = self.alpha_at(j, g) + self.alpha_at(i, gj);
                    if lhs != rhs {
                        return Some(at(ViolationKind::Scalars, g, i, j));
                    }
                }
            }
        }
        None
    }

    pub fn is_valid(&self, p: &ThetaFamily) -> bool {
        self.validate(p).is_none()
    }

    /// Scalar picked up by following a path of degree d from ξ_0: forward
    /// steps through generators, backward steps through adjoints, colors
    /// in increasing order. For d ∈ K this is the loop phase ψ(d).
    pub fn path_phase(&self, d: &[i64]) -> (usize, Phase) {
        let mut g = 0;
        let mut phase = Phase::ZERO;
        for (c, &steps) in d.iter().enumerate() {
            let color = c + 1;
            for _ in 0..steps.unsigned_abs() {
                if steps > 0 {
                    g = self.group.plus(color, g);
                    phase += self.alpha_at(color, g);
                } else {
                    phase = phase - self.alpha_at(color, g);
                    g = self.group.minus(color, g);
                }
            }
        }
        (g, phase)
    }

    /// Loop phase ψ(d); `None` if d ∉ K.
    pub fn loop_phase(&self, d: &[i64]) -> Option<Phase> {
        let (end, phase) = self.path_phase(d);
        (end == 0 && self.group.contains_relation(d)).then_some(phase)
    }

    /// ξ_g ↦ λ_g ξ_g: α^i_g becomes α^i_g + λ_{g−g_i} − λ_g.
    pub fn rescale(&self, lambda: &[Phase]) -> GroupConstruction {
        let mut out = self.clone();
        for (c, row) in out.alpha.iter_mut().enumerate() {
            for (g, a) in row.iter_mut().enumerate() {
                *a = *a + lambda[self.group.minus(c + 1, g)] - lambda[g];
            }
        }
        out
    }

    pub fn to_json(&self) -> GroupConstructionJson {
        GroupConstructionJson {
            group: self.group.to_json(),
            t: self.t.clone(),
            alpha: self.alpha.clone(),
        }
    }

    pub fn from_json(json: &GroupConstructionJson) -> Result<GroupConstruction> {
        let group = FiniteAbelianGroup::from_json(&json.group)?;
        let n = group.order();
        let k = group.k();
        if json.t.len() != k || json.alpha.len() != k {
            return Err(Error::InvalidConstruction("need one t and α table per color".into()));
        }
        if json.t.iter().any(|r| r.len() != n) || json.alpha.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidConstruction(format!("tables must have {n} entries")));
        }
        Ok(GroupConstruction {
            group,
            t: json.t.clone(),
            alpha: json.alpha.clone(),
        })
    }
}

fn color_word(p: &ThetaFamily, color: usize, u: &[usize]) -> Result<Word> {
    let w = Word::single_color(p.k(), color, u)?;
    p.check_word(&w)?;
    Ok(w)
}

/// First pair i < j with e^i_{u_i} e^j_{u_j} ≠ e^j_{u_j} e^i_{u_i}.
pub fn commuting_failure(p: &ThetaFamily, words: &[Vec<usize>]) -> Result<Option<(usize, usize)>> {
    if words.len() != p.k() {
        return Err(Error::InvalidWord(format!("need {} color words", p.k())));
    }
    let ws = words
        .iter()
        .enumerate()
        .map(|(c, u)| color_word(p, c + 1, u))
        .collect::<Result<Vec<_>>>()?;
    for i in 0..ws.len() {
        for j in i + 1..ws.len() {
            if !p.words_equal(&ws[i].concat(&ws[j])?, &ws[j].concat(&ws[i])?) {
                return Ok(Some((i + 1, j + 1)));
            }
        }
    }
    Ok(None)
}

pub fn words_commute(p: &ThetaFamily, words: &[Vec<usize>]) -> Result<bool> {
    Ok(commuting_failure(p, words)?.is_none())
}

/// The unique construction on C_{n_1}×…×C_{n_k} with σ(e^i_{u_i})ξ_0 ∈ Cξ_0
/// and α^i ≡ alphas_i, introducing colors in increasing order.
pub fn from_commuting_words(
    p: &ThetaFamily,
    words: &[Vec<usize>],
    alphas: &[Phase],
) -> Result<GroupConstruction> {
    let order: Vec<usize> = (1..=p.k()).collect();
    from_commuting_words_in_order(p, words, alphas, &order)
}

/// Colors are introduced one at a time in `order`. Once color c joins, the
/// product W of the words introduced so far fixes ξ_0, and for each base
/// point b whose support together with i contains c, splitting
/// W = X·L·Y with deg Y = b and deg L = n_i ε_i exposes the color-i loop
/// L through ξ_b.
pub fn from_commuting_words_in_order(
    p: &ThetaFamily,
    words: &[Vec<usize>],
    alphas: &[Phase],
    order: &[usize],
) -> Result<GroupConstruction> {
    let k = p.k();
    if alphas.len() != k {
        return Err(Error::InvalidConstruction(format!("need {k} constants")));
    }
    let mut sorted = order.to_vec();
    sorted.sort_unstable();
    if sorted != (1..=k).collect::<Vec<_>>() {
        return Err(Error::InvalidConstruction(format!("{order:?} is not an ordering of the colors")));
    }
    if words.iter().any(|u| u.is_empty()) {
        return Err(Error::InvalidWord("color words must be nonempty".into()));
    }
    if let Some((i, j)) = commuting_failure(p, words)? {
        return Err(Error::NotCommuting { i, j });
    }
    let n: Vec<usize> = words.iter().map(|u| u.len()).collect();
    let group = FiniteAbelianGroup::cyclic_product(&n)?;
    let size = group.order();
    let mut t: Vec<Vec<usize>> = vec![vec![0; size]; k];

    let mut product = Word::empty(k);
    let mut present = vec![false; k + 1];
    for &c in order {
        product = p.normal_form(&product.concat(&color_word(p, c, &words[c - 1])?)?);
        present[c] = true;
        let top = product.degree().clone();
        for &i in order.iter().filter(|&&i| present[i]) {
            // base points b with b_i = 0, supported on present colors
            let ranges: Vec<usize> = (1..=k)
                .map(|x| if x == i || !present[x] { 1 } else { n[x - 1] })
                .collect();
            for b in box_points(&ranges) {
                if i != c && b[c - 1] == 0 {
                    continue;
                }
                let b_deg = Multidegree(b.clone());
                let head = top.checked_sub(&b_deg).expect("inside the box");
                let (x_l, _y) = p.extract_prefix(&product, &head)?;
                let x_deg = head
                    .checked_sub(&Multidegree::unit(k, i).scale(n[i - 1]))
                    .expect("loop fits");
                let (_x, l) = p.extract_prefix(&x_l, &x_deg)?;
                let xs = l.indices();
                let len = n[i - 1];
                let mut v: Vec<i64> = b.iter().map(|&x| x as i64).collect();
                for r in 1..=len {
                    v[i - 1] = r as i64;
                    let g = group.index(&v);
                    let value = xs[len - r];
                    let slot = &mut t[i - 1][g];
                    if *slot != 0 && *slot != value {
                        return Err(Error::InvalidConstruction(format!(
                            "conflicting values for t^{i} at {v:?}"
                        )));
                    }
                    *slot = value;
                }
            }
        }
    }
    let alpha = alphas.iter().map(|&a| vec![a; size]).collect();
    let gc = GroupConstruction { group, t, alpha };
    if let Some(v) = gc.validate(p) {
        return Err(Error::InvalidConstruction(format!("result fails validation: {v:?}")));
    }
    Ok(gc)
}

/// All points of the box Π [0, ranges_i).
pub(crate) fn box_points(ranges: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &r in ranges {
        let mut next = Vec::with_capacity(out.len() * r);
        for pt in &out {
            for x in 0..r {
                let mut q = pt.clone();
                q.push(x);
                next.push(q);
            }
        }
        out = next;
    }
    out
}

/// The color-i loop word read off at ξ_g: e^i_{t_g} e^i_{t_{g−g_i}} ⋯ over one period.
pub fn loop_word(gc: &GroupConstruction, color: usize, g: usize, len: usize) -> Vec<Generator> {
    let mut out = Vec::with_capacity(len);
    let mut x = g;
    for _ in 0..len {
        out.push(Generator::new(color, gc.t_at(color, x)));
        x = gc.group.minus(color, x);
    }
    out
}
