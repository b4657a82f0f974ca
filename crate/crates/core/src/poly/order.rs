use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::Monomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrderKind {
    Lex,
    DegRevLex,
    /// Degree-reverse-lexicographic on the first `split` variables (in
    /// permuted position), ties broken by degree-reverse-lexicographic on
    /// the rest. Eliminates the first block.
    BlockElim { split: usize },
}

/// A monomial order: a kind applied to the variables in the order given by
/// `perm` (position `i` of the order is variable `perm[i]`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrderSpec {
    pub kind: OrderKind,
    pub perm: Option<Vec<usize>>,
}

impl Default for OrderSpec {
    fn default() -> Self {
        OrderSpec::degrevlex()
    }
}

fn grevlex(a: &[u32], b: &[u32], idx: &dyn Fn(usize) -> usize, range: std::ops::Range<usize>) -> Ordering {
    let da: u32 = range.clone().map(|i| a[idx(i)]).sum();
    let db: u32 = range.clone().map(|i| b[idx(i)]).sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        o => return o,
    }
    for i in range.rev() {
        let (x, y) = (a[idx(i)], b[idx(i)]);
        if x != y {
            // smaller exponent in the last variable wins
            return y.cmp(&x);
        }
    }
    Ordering::Equal
}

impl OrderSpec {
    pub fn lex() -> Self {
        OrderSpec { kind: OrderKind::Lex, perm: None }
    }

    pub fn degrevlex() -> Self {
        OrderSpec { kind: OrderKind::DegRevLex, perm: None }
    }

    pub fn of_kind(kind: OrderKind) -> Self {
        OrderSpec { kind, perm: None }
    }

    /// Block order eliminating `elim` (variable indices) from a context of
    /// `nvars` variables.
    pub fn eliminating(elim: &[usize], nvars: usize) -> Self {
        let mut perm: Vec<usize> = elim.to_vec();
        perm.extend((0..nvars).filter(|i| !elim.contains(i)));
        OrderSpec { kind: OrderKind::BlockElim { split: elim.len() }, perm: Some(perm) }
    }

    #[inline]
    fn at(&self, i: usize) -> usize {
        match &self.perm {
            Some(p) => p[i],
            None => i,
        }
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.cmp_exps(a.exps(), b.exps())
    }

    pub fn cmp_exps(&self, a: &[u32], b: &[u32]) -> Ordering {
        let n = a.len();
        let idx = |i: usize| self.at(i);
        match self.kind {
            OrderKind::Lex => {
                for i in 0..n {
                    let (x, y) = (a[idx(i)], b[idx(i)]);
                    if x != y {
                        return x.cmp(&y);
                    }
                }
                Ordering::Equal
            }
            OrderKind::DegRevLex => grevlex(a, b, &idx, 0..n),
            OrderKind::BlockElim { split } => match grevlex(a, b, &idx, 0..split) {
                Ordering::Equal => grevlex(a, b, &idx, split..n),
                o => o,
            },
        }
    }

    /// Comparison restricted to the elimination block (always `Equal` for
    /// non-block orders).
    fn cmp_block(&self, a: &[u32], b: &[u32]) -> Ordering {
        match self.kind {
            OrderKind::BlockElim { split } => grevlex(a, b, &|i| self.at(i), 0..split),
            _ => Ordering::Equal,
        }
    }

    fn cmp_rest(&self, a: &[u32], b: &[u32]) -> Ordering {
        match self.kind {
            OrderKind::BlockElim { split } => grevlex(a, b, &|i| self.at(i), split..a.len()),
            _ => self.cmp_exps(a, b),
        }
    }

    /// Whether the first (eliminated) block of `m` is empty.
    pub fn outside_block(&self, m: &Monomial) -> bool {
        match self.kind {
            OrderKind::BlockElim { split } => (0..split).all(|i| m.exp(self.at(i)) == 0),
            _ => true,
        }
    }
}

/// Term order on a free module: a monomial order combined with
/// position-over-term or term-over-position. Lower basis index is larger.
///
/// With a block-elimination monomial order the eliminated block is compared
/// before positions, so elimination works across all components.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModuleOrder {
    pub mono: OrderSpec,
    pub position_over_term: bool,
}

impl Default for ModuleOrder {
    fn default() -> Self {
        ModuleOrder { mono: OrderSpec::degrevlex(), position_over_term: true }
    }
}

impl ModuleOrder {
    pub fn pot(mono: OrderSpec) -> Self {
        ModuleOrder { mono, position_over_term: true }
    }

    pub fn top(mono: OrderSpec) -> Self {
        ModuleOrder { mono, position_over_term: false }
    }

    #[inline]
    pub fn cmp(&self, a: &Monomial, ap: usize, b: &Monomial, bp: usize) -> Ordering {
        let (ae, be) = (a.exps(), b.exps());
        match self.mono.cmp_block(ae, be) {
            Ordering::Equal => {}
            o => return o,
        }
        let pos = bp.cmp(&ap);
        if self.position_over_term {
            pos.then_with(|| self.mono.cmp_rest(ae, be))
        } else {
            self.mono.cmp_rest(ae, be).then(pos)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_slice(e)
    }

    #[test]
    fn degrevlex_standard_examples() {
        let o = OrderSpec::degrevlex();
        // x^2 > xy > y^2 > xz > yz > z^2 in degrevlex with x > y > z
        let seq = [[2, 0, 0], [1, 1, 0], [0, 2, 0], [1, 0, 1], [0, 1, 1], [0, 0, 2]];
        for w in seq.windows(2) {
            assert_eq!(o.cmp(&m(&w[0]), &m(&w[1])), Ordering::Greater, "{:?}", w);
        }
        // xyz vs x^2 z... degree decides first
        assert_eq!(o.cmp(&m(&[0, 0, 3]), &m(&[1, 1, 0])), Ordering::Greater);
    }

    #[test]
    fn lex_and_permutation() {
        let o = OrderSpec::lex();
        assert_eq!(o.cmp(&m(&[1, 0]), &m(&[0, 5])), Ordering::Greater);
        let p = OrderSpec { kind: OrderKind::Lex, perm: Some(vec![1, 0]) };
        assert_eq!(p.cmp(&m(&[1, 0]), &m(&[0, 5])), Ordering::Less);
    }

    #[test]
    fn block_order_eliminates() {
        // eliminate t (index 2): any monomial with t beats any without
        let o = OrderSpec::eliminating(&[2], 3);
        assert_eq!(o.cmp(&m(&[0, 0, 1]), &m(&[9, 9, 0])), Ordering::Greater);
        assert!(o.outside_block(&m(&[3, 1, 0])));
        assert!(!o.outside_block(&m(&[0, 0, 1])));
    }

    #[test]
    fn module_orders() {
        let pot = ModuleOrder::default();
        // position dominates in POT: e0 beats any multiple of e1
        assert_eq!(pot.cmp(&m(&[0, 0]), 0, &m(&[5, 5]), 1), Ordering::Greater);
        let top = ModuleOrder::top(OrderSpec::degrevlex());
        assert_eq!(top.cmp(&m(&[0, 0]), 0, &m(&[5, 5]), 1), Ordering::Less);
        assert_eq!(top.cmp(&m(&[1, 0]), 1, &m(&[1, 0]), 0), Ordering::Less);
    }
}
