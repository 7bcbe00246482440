//! The limit Bass-Serre tree, explored locally.
//!
//! Vertices are `u·v₀` and edges `u·e₀` for words `u`; `e₀` runs from `v₀`
//! to `a⁻¹·v₀`. Two vertex representatives agree when `u⁻¹u'` is a b-power
//! in the limit group, two edge representatives when it is a b-power whose
//! exponent is divisible by `M` on the whole class.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::engine::LimitGroup;
use crate::word::{Sign, Word};
use crate::Result;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VertexHandle {
    rep: Word,
}

impl VertexHandle {
    /// `v₀`.
    pub fn base() -> Self {
        VertexHandle { rep: Word::identity() }
    }

    pub fn new(rep: Word) -> Self {
        VertexHandle { rep }
    }

    pub fn rep(&self) -> &Word {
        &self.rep
    }

    /// `σ_a` of any representative.
    pub fn height(&self) -> i64 {
        self.rep.sigma_a()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EdgeHandle {
    rep: Word,
}

impl EdgeHandle {
    pub fn new(rep: Word) -> Self {
        EdgeHandle { rep }
    }

    pub fn rep(&self) -> &Word {
        &self.rep
    }

    pub fn origin(&self) -> VertexHandle {
        VertexHandle::new(self.rep.clone())
    }

    pub fn terminal(&self) -> VertexHandle {
        VertexHandle::new(&self.rep * &Word::a_power(-1))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LimitTree {
    group: LimitGroup,
}

impl LimitTree {
    pub fn new(group: LimitGroup) -> Self {
        LimitTree { group }
    }

    pub fn group(&self) -> &LimitGroup {
        &self.group
    }

    /// Vertices `v₀, w_1·v₀, …, w_h·v₀` where `w_i` is the prefix of `w`
    /// ending with its `i`-th a-letter.
    pub fn path_of(&self, w: &Word) -> Vec<VertexHandle> {
        let mut out = Vec::with_capacity(w.a_length() + 1);
        let mut prefix = Word::b_power(w.head().clone());
        out.push(VertexHandle::base());
        for (s, e) in w.blocks() {
            prefix = &prefix * &Word::a_power(s.value());
            out.push(VertexHandle::new(prefix.clone()));
            prefix = &prefix * &Word::b_power(e.clone());
        }
        out
    }

    pub fn vertices_equal(&self, u: &VertexHandle, v: &VertexHandle) -> Result<bool> {
        let x = &u.rep.inverse() * &v.rep;
        Ok(self.group.stabilizer_exponent(&x)?.is_some())
    }

    pub fn edges_equal(&self, u: &EdgeHandle, v: &EdgeHandle) -> Result<bool> {
        let x = &u.rep.inverse() * &v.rep;
        if x.sigma_a() != 0 {
            return Ok(false);
        }
        let (ctx, red) = self.group.reduce(&x)?;
        Ok(match red.as_b_power() {
            Some(alpha) => ctx.value_at_representative(alpha).is_multiple_of(&ctx.m().abs()),
            None => false,
        })
    }

    pub fn height(&self, v: &VertexHandle) -> i64 {
        v.height()
    }

    /// The `|M|` edges `u·b^λ·e₀`, `0 <= λ < |M|`, leaving `v`.
    pub fn neighbors_out(&self, v: &VertexHandle) -> Vec<EdgeHandle> {
        let m = self.group.m().unsigned_abs();
        (0..m).map(|l| EdgeHandle::new(&v.rep * &Word::b_power(l))).collect()
    }

    /// The edges `u·b^μ·a·e₀`, `|μ| <= bound`, arriving at `v`.
    pub fn neighbors_in(&self, v: &VertexHandle, bound: u64) -> Vec<EdgeHandle> {
        let b = bound as i64;
        (-b..=b)
            .map(|mu| EdgeHandle::new(&(&v.rep * &Word::b_power(mu)) * &Word::a_power(1)))
            .collect()
    }

    /// `w` has the form `a b^{α_1} … a b^{α_k} a⁻¹ b^{α_{k+1}} … a⁻¹ b^{α_{2k}}`
    /// with `k >= 1` and fixes `v₀`.
    pub fn is_relator(&self, w: &Word) -> Result<bool> {
        if relator_shape(w).is_none() {
            return Ok(false);
        }
        Ok(self.group.stabilizer_exponent(w)?.is_some())
    }

    /// All `make_relator(w)` for relator words `w` with `k <= k_max` and
    /// `|α_i| <= exp_max`, in order of `k` then lexicographic exponents.
    /// Relators that freely reduce to the empty word are skipped.
    pub fn enumerate_relators(&self, k_max: usize, exp_max: u32) -> Result<Relators<'_>> {
        self.group.context(k_max as u32)?;
        Ok(Relators {
            tree: self,
            k_max,
            exp_max: exp_max as i64,
            k: 1,
            exps: None,
        })
    }
}

/// `k` when `w` has the block shape of a relator word.
pub fn relator_shape(w: &Word) -> Option<usize> {
    let blocks = w.blocks();
    let h = blocks.len();
    if !w.head().is_zero() || h == 0 || !h.is_multiple_of(2) {
        return None;
    }
    let k = h / 2;
    let ok = blocks[..k].iter().all(|(s, _)| *s == Sign::Plus) && blocks[k..].iter().all(|(s, _)| *s == Sign::Minus);
    ok.then_some(k)
}

/// `w·bar(w)`.
pub fn make_relator(w: &Word) -> Word {
    w * &w.bar()
}

/// Lazy grid search behind [`LimitTree::enumerate_relators`].
pub struct Relators<'a> {
    tree: &'a LimitTree,
    k_max: usize,
    exp_max: i64,
    k: usize,
    exps: Option<Vec<i64>>,
}

impl Relators<'_> {
    // Next exponent vector in the grid, moving to the next k when needed.
    fn advance(&mut self) -> Option<Vec<i64>> {
        loop {
            if self.k > self.k_max {
                return None;
            }
            let next = match self.exps.take() {
                None => Some(alloc::vec![-self.exp_max; 2 * self.k]),
                Some(mut v) => {
                    let mut i = v.len();
                    loop {
                        if i == 0 {
                            break None;
                        }
                        i -= 1;
                        if v[i] < self.exp_max {
                            v[i] += 1;
                            break Some(v);
                        }
                        v[i] = -self.exp_max;
                    }
                }
            };
            match next {
                Some(v) => {
                    self.exps = Some(v.clone());
                    return Some(v);
                }
                None => self.k += 1,
            }
        }
    }
}

impl Iterator for Relators<'_> {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        while let Some(exps) = self.advance() {
            let k = exps.len() / 2;
            // b^0 between a and a⁻¹ would cancel freely
            if exps[k - 1] == 0 {
                continue;
            }
            let blocks = exps
                .iter()
                .enumerate()
                .map(|(i, &e)| (if i < k { Sign::Plus } else { Sign::Minus }, BigInt::from(e)));
            let w = Word::from_blocks(0, blocks.collect::<Vec<_>>());
            let fixes = self
                .tree
                .group
                .stabilizer_exponent(&w)
                .expect("precision checked for k_max");
            if fixes.is_some() {
                let r = make_relator(&w);
                // α_{2k} = 0 makes w·bar(w) collapse freely
                if !r.is_identity() {
                    return Some(r);
                }
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn tree(m: i64, k: u32, xi: i64) -> LimitTree {
        LimitTree::new(LimitGroup::from_parts(m, k, xi).unwrap())
    }

    #[test]
    fn paths() {
        let t = tree(2, 4, 1);
        assert_eq!(t.path_of(&w("b^5")), [VertexHandle::base()]);
        let p = t.path_of(&w("A"));
        assert_eq!(p.iter().map(VertexHandle::height).collect::<Vec<_>>(), [0, -1]);
        let p = t.path_of(&w("a b^2 A"));
        assert_eq!(p.len(), 3);
        assert!(t.vertices_equal(&p[2], &VertexHandle::base()).unwrap());
        assert!(!t.vertices_equal(&p[1], &VertexHandle::base()).unwrap());
    }

    #[test]
    fn vertex_equality() {
        let t = tree(2, 4, 1);
        let v0 = VertexHandle::base();
        assert!(t.vertices_equal(&v0, &VertexHandle::new(w("b^3"))).unwrap());
        assert!(!t.vertices_equal(&v0, &VertexHandle::new(w("A"))).unwrap());
        assert!(t.vertices_equal(&VertexHandle::new(w("a b^2 A")), &v0).unwrap());
    }

    #[test]
    fn heights() {
        assert_eq!(VertexHandle::base().height(), 0);
        assert_eq!(VertexHandle::new(w("A^3")).height(), -3);
        assert_eq!(VertexHandle::new(w("a b a")).height(), 2);
    }

    #[test]
    fn out_edges_are_distinct() {
        for (m, count) in [(2, 2), (3, 3), (-1, 1), (6, 6)] {
            let t = tree(m, 4, 1);
            let edges = t.neighbors_out(&VertexHandle::base());
            assert_eq!(edges.len(), count);
            for i in 0..edges.len() {
                for j in 0..edges.len() {
                    assert_eq!(t.edges_equal(&edges[i], &edges[j]).unwrap(), i == j);
                }
            }
        }
    }

    #[test]
    fn in_edges() {
        let t = tree(2, 4, 1);
        let v0 = VertexHandle::base();
        assert_eq!(t.neighbors_in(&v0, 0).len(), 1);
        let edges = t.neighbors_in(&v0, 1);
        assert_eq!(edges.len(), 3);
        for (i, e) in edges.iter().enumerate() {
            assert!(t.vertices_equal(&e.terminal(), &v0).unwrap());
            for (j, f) in edges.iter().enumerate() {
                assert_eq!(t.edges_equal(e, f).unwrap(), i == j);
            }
        }
        assert_eq!(t.neighbors_in(&VertexHandle::new(w("a b")), 2).len(), 5);
    }

    #[test]
    fn relators() {
        let t = tree(2, 4, 1);
        assert!(t.is_relator(&w("a b^2 A")).unwrap());
        assert!(!t.is_relator(&w("a b A")).unwrap());
        assert!(!t.is_relator(&w("b")).unwrap());
        // A a cancels in the middle
        assert!(make_relator(&w("a b^2 A")).is_identity());
        let r = make_relator(&w("a b^2 A b"));
        assert_eq!(r, w("a b^2 A b a B^2 A B"));
        assert!(t.group().is_trivial(&r).unwrap());
    }

    #[test]
    fn relator_enumeration() {
        let t = tree(2, 4, 1);
        let all: Vec<_> = t.enumerate_relators(1, 2).unwrap().collect();
        assert!(all.contains(&make_relator(&w("a b^2 A b"))));
        assert!(all.iter().all(|r| !r.is_identity()));
        assert_eq!(all.len(), 8);
        assert!(t.enumerate_relators(1, 0).unwrap().next().is_none());
        let t = tree(3, 4, 1);
        assert!(t
            .enumerate_relators(1, 3)
            .unwrap()
            .any(|r| r == make_relator(&w("a b^3 A B^2"))));
    }
}
