use std::collections::BTreeMap;
use std::ops::Deref;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::{Generator, Multidegree, Word};

/// Index of the unordered pair {i,j}, i<j, 1-based colors.
fn pair_slot(k: usize, i: usize, j: usize) -> usize {
    debug_assert!(1 <= i && i < j && j <= k);
    let a = i - 1;
    a * (2 * k - a - 1) / 2 + (j - i - 1)
}

/// Bijective θ tables for every pair of colors, not yet checked for the cubic
/// condition. Rewriting works on this type so that invalid data can be probed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ThetaFamily {
    k: usize,
    m: Vec<usize>,
    // fwd[slot][(s-1)*m_j + (t-1)] = (s'-1)*m_j + (t'-1)
    fwd: Vec<Vec<u32>>,
    inv: Vec<Vec<u32>>,
}

impl ThetaFamily {
    /// Builds from flat tables in pair order (1,2),(1,3),…,(k-1,k).
    pub fn from_flat(m: Vec<usize>, fwd: Vec<Vec<u32>>) -> Result<ThetaFamily> {
        let k = m.len();
        if k == 0 {
            return Err(Error::MalformedPresentation("k must be at least 1".into()));
        }
        if m.iter().any(|&x| x == 0) {
            return Err(Error::MalformedPresentation("multiplicities must be ≥ 1".into()));
        }
        if fwd.len() != k * (k - 1) / 2 {
            return Err(Error::MalformedPresentation(format!(
                "expected {} theta tables, got {}",
                k * (k - 1) / 2,
                fwd.len()
            )));
        }
        let mut inv = Vec::with_capacity(fwd.len());
        for i in 1..=k {
            for j in i + 1..=k {
                let table = &fwd[pair_slot(k, i, j)];
                let size = m[i - 1] * m[j - 1];
                if table.len() != size {
                    return Err(Error::MalformedPresentation(format!(
                        "table ({i},{j}) has {} entries, expected {size}",
                        table.len()
                    )));
                }
                let mut back = vec![u32::MAX; size];
                for (x, &y) in table.iter().enumerate() {
                    let y = y as usize;
                    if y >= size || back[y] != u32::MAX {
                        return Err(Error::InvalidPermutation { i, j });
                    }
                    back[y] = x as u32;
                }
                inv.push(back);
            }
        }
        Ok(ThetaFamily { k, m, fwd, inv })
    }

    /// Builds from a rule (i,j,s,t) ↦ (s',t') evaluated on every pair and index.
    pub fn from_fn(
        m: Vec<usize>,
        rule: impl Fn(usize, usize, usize, usize) -> (usize, usize),
    ) -> Result<ThetaFamily> {
        let k = m.len();
        let mut fwd = Vec::new();
        for i in 1..=k {
            for j in i + 1..=k {
                let (mi, mj) = (m[i - 1], m[j - 1]);
                let mut table = Vec::with_capacity(mi * mj);
                for s in 1..=mi {
                    for t in 1..=mj {
                        let (s2, t2) = rule(i, j, s, t);
                        if s2 == 0 || s2 > mi || t2 == 0 || t2 > mj {
                            return Err(Error::MalformedPresentation(format!(
                                "theta({i},{j}) maps ({s},{t}) outside the index range"
                            )));
                        }
                        table.push(((s2 - 1) * mj + (t2 - 1)) as u32);
                    }
                }
                fwd.push(table);
            }
        }
        ThetaFamily::from_flat(m, fwd)
    }

    /// Builds from explicit [(s,t),(s',t')] lists keyed by (i,j); each list
    /// must cover its domain exactly once.
    pub fn from_tables(
        k: usize,
        m: Vec<usize>,
        tables: &BTreeMap<(usize, usize), Vec<[[usize; 2]; 2]>>,
    ) -> Result<ThetaFamily> {
        if m.len() != k {
            return Err(Error::MalformedPresentation(format!(
                "k={k} but {} multiplicities given",
                m.len()
            )));
        }
        if k == 0 || m.iter().any(|&x| x == 0) {
            return Err(Error::MalformedPresentation("k and all m_i must be ≥ 1".into()));
        }
        for &(i, j) in tables.keys() {
            if !(1 <= i && i < j && j <= k) {
                return Err(Error::MalformedPresentation(format!("bad color pair ({i},{j})")));
            }
        }
        let mut fwd = Vec::new();
        for i in 1..=k {
            for j in i + 1..=k {
                let (mi, mj) = (m[i - 1], m[j - 1]);
                let entries = tables.get(&(i, j)).ok_or_else(|| {
                    Error::MalformedPresentation(format!("missing theta table ({i},{j})"))
                })?;
                let mut table = vec![u32::MAX; mi * mj];
                for [[s, t], [s2, t2]] in entries.iter().copied() {
                    let in_range = |a: usize, b: usize| 1 <= a && a <= mi && 1 <= b && b <= mj;
                    if !in_range(s, t) || !in_range(s2, t2) {
                        return Err(Error::MalformedPresentation(format!(
                            "theta({i},{j}) entry ({s},{t})->({s2},{t2}) out of range"
                        )));
                    }
                    let x = (s - 1) * mj + (t - 1);
                    if table[x] != u32::MAX {
                        return Err(Error::MalformedPresentation(format!(
                            "theta({i},{j}) defines ({s},{t}) twice"
                        )));
                    }
                    table[x] = ((s2 - 1) * mj + (t2 - 1)) as u32;
                }
                if let Some(x) = table.iter().position(|&y| y == u32::MAX) {
                    return Err(Error::MalformedPresentation(format!(
                        "theta({i},{j}) undefined at ({},{})",
                        x / mj + 1,
                        x % mj + 1
                    )));
                }
                fwd.push(table);
            }
        }
        ThetaFamily::from_flat(m, fwd)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn m(&self) -> &[usize] {
        &self.m
    }

    pub fn flat_table(&self, i: usize, j: usize) -> &[u32] {
        &self.fwd[pair_slot(self.k, i, j)]
    }

    pub fn flat_tables(&self) -> &[Vec<u32>] {
        &self.fwd
    }

    /// θ_ij(s,t) = (s',t'), meaning e^i_s e^j_t = e^j_t' e^i_s'.
    pub fn theta(&self, i: usize, j: usize, s: usize, t: usize) -> (usize, usize) {
        let mj = self.m[j - 1];
        let y = self.fwd[pair_slot(self.k, i, j)][(s - 1) * mj + (t - 1)] as usize;
        (y / mj + 1, y % mj + 1)
    }

    pub fn theta_inv(&self, i: usize, j: usize, s: usize, t: usize) -> (usize, usize) {
        let mj = self.m[j - 1];
        let y = self.inv[pair_slot(self.k, i, j)][(s - 1) * mj + (t - 1)] as usize;
        (y / mj + 1, y % mj + 1)
    }

    /// Lexicographically first triple where the two composites disagree.
    pub fn cubic_witness(&self) -> Option<Error> {
        let k = self.k;
        for i in 1..=k {
            for j in i + 1..=k {
                for l in j + 1..=k {
                    for s in 1..=self.m[i - 1] {
                        for t in 1..=self.m[j - 1] {
                            for u in 1..=self.m[l - 1] {
                                let lhs = self.compose_ij_il_jl(i, j, l, [s, t, u]);
                                let rhs = self.compose_jl_il_ij(i, j, l, [s, t, u]);
                                if lhs != rhs {
                                    return Some(Error::CubicViolation {
                                        i,
                                        j,
                                        l,
                                        witness: [s, t, u],
                                        lhs,
                                        rhs,
                                    });
                                }
                            }
                        }
                    }
                }
            }
        }
        None
    }

    // θ_ij ∘ θ_il ∘ θ_jl, rightmost first.
    fn compose_ij_il_jl(&self, i: usize, j: usize, l: usize, [s, t, u]: [usize; 3]) -> [usize; 3] {
        let (t, u) = self.theta(j, l, t, u);
        let (s, u) = self.theta(i, l, s, u);
        let (s, t) = self.theta(i, j, s, t);
        [s, t, u]
    }

    fn compose_jl_il_ij(&self, i: usize, j: usize, l: usize, [s, t, u]: [usize; 3]) -> [usize; 3] {
        let (s, t) = self.theta(i, j, s, t);
        let (s, u) = self.theta(i, l, s, u);
        let (t, u) = self.theta(j, l, t, u);
        [s, t, u]
    }

    pub fn generators(&self) -> Vec<Generator> {
        let mut out = Vec::new();
        for c in 1..=self.k {
            for i in 1..=self.m[c - 1] {
                out.push(Generator::new(c, i));
            }
        }
        out
    }

    pub fn check_word(&self, w: &Word) -> Result<()> {
        if w.k() != self.k {
            return Err(Error::MixedPresentations);
        }
        for g in w.letters() {
            if g.color == 0 || g.color > self.k || g.index == 0 || g.index > self.m[g.color - 1] {
                return Err(Error::InvalidWord(format!("letter {g} out of range")));
            }
        }
        Ok(())
    }

    /// Rewrites an adjacent pair of distinct colors xy as y'x'.
    pub fn swap(&self, x: Generator, y: Generator) -> (Generator, Generator) {
        if x.color < y.color {
            let (s2, t2) = self.theta(x.color, y.color, x.index, y.index);
            (Generator::new(y.color, t2), Generator::new(x.color, s2))
        } else {
            assert!(x.color > y.color, "cannot swap letters of the same color");
            let (s, t) = self.theta_inv(y.color, x.color, y.index, x.index);
            (Generator::new(y.color, s), Generator::new(x.color, t))
        }
    }

    /// The color-sorted representative.
    pub fn normal_form(&self, w: &Word) -> Word {
        let mut out: Vec<Generator> = Vec::with_capacity(w.len());
        for &g in w.letters() {
            out.push(g);
            let mut p = out.len() - 1;
            while p > 0 && out[p - 1].color > out[p].color {
                let (a, b) = self.swap(out[p - 1], out[p]);
                out[p - 1] = a;
                out[p] = b;
                p -= 1;
            }
        }
        Word::from_letters(self.k, out)
    }

    /// Sorts by repeatedly swapping a descending adjacent pair chosen by
    /// `choose(number_of_candidates)`. On a valid presentation every strategy
    /// reaches `normal_form`.
    pub fn sort_by_strategy(&self, w: &Word, mut choose: impl FnMut(usize) -> usize) -> Word {
        let mut letters = w.letters().to_vec();
        let mut candidates = Vec::new();
        loop {
            candidates.clear();
            candidates.extend(
                (0..letters.len().saturating_sub(1))
                    .filter(|&p| letters[p].color > letters[p + 1].color),
            );
            if candidates.is_empty() {
                break;
            }
            let p = candidates[choose(candidates.len()) % candidates.len()];
            let (a, b) = self.swap(letters[p], letters[p + 1]);
            letters[p] = a;
            letters[p + 1] = b;
        }
        Word::from_letters(self.k, letters)
    }

    pub fn words_equal(&self, a: &Word, b: &Word) -> bool {
        a.degree() == b.degree() && self.normal_form(a) == self.normal_form(b)
    }

    /// Factors w = u·v with deg u = n. Both parts come back in normal form.
    pub fn extract_prefix(&self, w: &Word, n: &Multidegree) -> Result<(Word, Word)> {
        if !n.le(w.degree()) {
            return Err(Error::NotAPrefix {
                requested: n.0.clone(),
                available: w.degree().0.clone(),
            });
        }
        let mut need = n.0.clone();
        let mut items: Vec<(u8, Generator)> = Vec::with_capacity(w.len());
        for &g in w.letters() {
            let mark = if need[g.color - 1] > 0 {
                need[g.color - 1] -= 1;
                0
            } else {
                1
            };
            items.push((mark, g));
        }
        // Insertion sort by (mark, color). Same-color letters never cross.
        for q in 1..items.len() {
            let mut p = q;
            while p > 0 && (items[p - 1].0, items[p - 1].1.color) > (items[p].0, items[p].1.color) {
                let (a, b) = self.swap(items[p - 1].1, items[p].1);
                let (ma, mb) = (items[p].0, items[p - 1].0);
                items[p - 1] = (ma, a);
                items[p] = (mb, b);
                p -= 1;
            }
        }
        let split = n.total();
        let u = items[..split].iter().map(|x| x.1).collect();
        let v = items[split..].iter().map(|x| x.1).collect();
        Ok((Word::from_letters(self.k, u), Word::from_letters(self.k, v)))
    }

    /// Moves the first letter of `color` to the front: w = g·rest.
    pub fn pop_color(&self, w: &Word, color: usize) -> Option<(Generator, Word)> {
        let mut letters = w.letters().to_vec();
        let p = letters.iter().position(|g| g.color == color)?;
        for q in (0..p).rev() {
            let (a, b) = self.swap(letters[q], letters[q + 1]);
            letters[q] = a;
            letters[q + 1] = b;
        }
        let g = letters.remove(0);
        Some((g, Word::from_letters(self.k, letters)))
    }

    pub fn count_words_of_degree(&self, d: &Multidegree) -> u128 {
        d.0.iter()
            .zip(&self.m)
            .map(|(&e, &m)| (m as u128).saturating_pow(e as u32))
            .fold(1u128, |a, b| a.saturating_mul(b))
    }

    /// All normal-form words of degree d, in lexicographic order.
    pub fn words_of_degree(&self, d: &Multidegree) -> Vec<Word> {
        let colors: Vec<usize> = (1..=self.k)
            .flat_map(|c| std::iter::repeat(c).take(d.0[c - 1]))
            .collect();
        let mut idx = vec![1usize; colors.len()];
        let mut out = Vec::with_capacity(self.count_words_of_degree(d).min(1 << 24) as usize);
        loop {
            out.push(Word::from_letters(
                self.k,
                colors.iter().zip(&idx).map(|(&c, &i)| Generator::new(c, i)).collect(),
            ));
            let mut p = colors.len();
            loop {
                if p == 0 {
                    return out;
                }
                p -= 1;
                if idx[p] < self.m[colors[p] - 1] {
                    idx[p] += 1;
                    break;
                }
                idx[p] = 1;
            }
        }
    }

    pub fn to_json(&self) -> PresentationJson {
        let mut theta = BTreeMap::new();
        for i in 1..=self.k {
            for j in i + 1..=self.k {
                let mut entries = Vec::new();
                for s in 1..=self.m[i - 1] {
                    for t in 1..=self.m[j - 1] {
                        let (s2, t2) = self.theta(i, j, s, t);
                        entries.push([[s, t], [s2, t2]]);
                    }
                }
                theta.insert(format!("{i},{j}"), entries);
            }
        }
        PresentationJson {
            k: self.k,
            m: self.m.clone(),
            theta,
        }
    }
}

/// A validated single-vertex k-graph: bijective tables satisfying the cubic condition.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Presentation {
    family: ThetaFamily,
}

impl Presentation {
    pub fn new(family: ThetaFamily) -> Result<Presentation> {
        if let Some(err) = family.cubic_witness() {
            return Err(err);
        }
        Ok(Presentation { family })
    }

    pub fn from_fn(
        m: Vec<usize>,
        rule: impl Fn(usize, usize, usize, usize) -> (usize, usize),
    ) -> Result<Presentation> {
        Presentation::new(ThetaFamily::from_fn(m, rule)?)
    }

    pub fn family(&self) -> &ThetaFamily {
        &self.family
    }

    pub fn from_json(json: &PresentationJson) -> Result<Presentation> {
        Presentation::new(ThetaFamily::from_json(json)?)
    }

    pub fn from_json_str(s: &str) -> Result<Presentation> {
        let json: PresentationJson =
            serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Presentation::from_json(&json)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("presentation serializes")
    }
}

impl Deref for Presentation {
    type Target = ThetaFamily;
    fn deref(&self) -> &ThetaFamily {
        &self.family
    }
}

/// Validates raw table data: bijectivity of every θ_ij, then the cubic condition.
pub fn validate_presentation(
    k: usize,
    m: Vec<usize>,
    tables: &BTreeMap<(usize, usize), Vec<[[usize; 2]; 2]>>,
) -> Result<Presentation> {
    Presentation::new(ThetaFamily::from_tables(k, m, tables)?)
}

/// Wire format: `{"k":3,"m":[2,2,2],"theta":{"1,2":[[[s,t],[s',t']],…],…}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationJson {
    pub k: usize,
    pub m: Vec<usize>,
    pub theta: BTreeMap<String, Vec<[[usize; 2]; 2]>>,
}

impl ThetaFamily {
    pub fn from_json(json: &PresentationJson) -> Result<ThetaFamily> {
        let mut tables = BTreeMap::new();
        for (key, entries) in &json.theta {
            let (i, j) = key
                .split_once(',')
                .and_then(|(a, b)| Some((a.trim().parse().ok()?, b.trim().parse().ok()?)))
                .ok_or_else(|| Error::MalformedPresentation(format!("bad pair key '{key}'")))?;
            if tables.insert((i, j), entries.clone()).is_some() {
                return Err(Error::MalformedPresentation(format!("duplicate pair key '{key}'")));
            }
        }
        ThetaFamily::from_tables(json.k, json.m.clone(), &tables)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn pair_slots_are_dense() {
        let k = 5;
        let mut seen = Vec::new();
        for i in 1..=k {
            for j in i + 1..=k {
                seen.push(pair_slot(k, i, j));
            }
        }
        assert_eq!(seen, (0..10).collect::<Vec<_>>());
    }

    #[test]
    fn rejects_non_bijection() {
        let err = ThetaFamily::from_fn(vec![2, 2], |_, _, _, _| (1, 1)).unwrap_err();
        assert_eq!(err, Error::InvalidPermutation { i: 1, j: 2 });
    }

    #[test]
    fn rejects_partial_table() {
        let mut tables = BTreeMap::new();
        tables.insert((1, 2), vec![[[1, 1], [1, 1]]]);
        assert!(matches!(
            validate_presentation(2, vec![2, 2], &tables),
            Err(Error::MalformedPresentation(_))
        ));
    }

    #[test]
    fn swap_inverts() {
        let p = catalog::forward_cycle();
        for x in p.generators() {
            for y in p.generators() {
                if x.color != y.color {
                    let (a, b) = p.swap(x, y);
                    assert_eq!(p.swap(a, b), (x, y));
                }
            }
        }
    }

    #[test]
    fn flip_normal_form() {
        let p = catalog::flip();
        for s in 1..=2 {
            for t in 1..=2 {
                let w = Word::from_pairs(2, &[(2, t), (1, s)]).unwrap();
                let nf = Word::from_pairs(2, &[(1, t), (2, s)]).unwrap();
                assert_eq!(p.normal_form(&w), nf);
            }
        }
    }

    #[test]
    fn prefix_extraction_in_flip() {
        let p = catalog::flip();
        let w = Word::from_pairs(2, &[(1, 1), (2, 2)]).unwrap();
        let (u, v) = p.extract_prefix(&w, &Multidegree(vec![0, 1])).unwrap();
        assert_eq!(u, Word::from_pairs(2, &[(2, 1)]).unwrap());
        assert_eq!(v, Word::from_pairs(2, &[(1, 2)]).unwrap());
        assert!(matches!(
            p.extract_prefix(&w, &Multidegree(vec![2, 0])),
            Err(Error::NotAPrefix { .. })
        ));
    }

    #[test]
    fn words_of_degree_are_normal_and_counted() {
        let p = catalog::flip_forward_cycles();
        let d = Multidegree(vec![1, 2, 1]);
        let ws = p.words_of_degree(&d);
        assert_eq!(ws.len() as u128, p.count_words_of_degree(&d));
        assert_eq!(ws.len(), 16);
        for w in &ws {
            assert_eq!(&p.normal_form(w), w);
        }
        assert!(ws.windows(2).all(|x| x[0] < x[1]));
    }

    #[test]
    fn json_round_trip() {
        let p = catalog::flip_squares();
        let s = p.to_json_string();
        assert_eq!(Presentation::from_json_str(&s).unwrap(), p);
        assert!(s.starts_with("{\"k\":3,\"m\":[2,2,2],\"theta\":{\"1,2\":[[[1,1],[1,1]]"));
    }
}
