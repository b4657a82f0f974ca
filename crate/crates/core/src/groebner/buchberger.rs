use std::cmp::Ordering;

use super::svec::SVec;
use crate::poly::{Field, ModuleOrder, Monomial};

/// Result of dividing by a list of monic elements.
pub struct Division<C: Field> {
    pub remainder: SVec<C>,
    /// Per divisor: terms `(monomial, coefficient)` of its cofactor.
    pub quotients: Option<Vec<Vec<(Monomial, C)>>>,
}

fn find_reducer<C: Field>(m: &Monomial, pos: usize, basis: &[SVec<C>], skip: Option<usize>) -> Option<usize> {
    basis.iter().enumerate().position(|(k, g)| {
        if Some(k) == skip {
            return false;
        }
        match g.lead() {
            Some((gm, gp, _)) => *gp == pos && gm.divides(m),
            None => false,
        }
    })
}

/// Multivariate division: reduces the leading term first, then (if `full`)
/// the remaining terms in descending order. Divisors must be monic; the
/// first divisor whose leading term divides is used.
pub fn reduce<C: Field>(
    f: SVec<C>,
    basis: &[SVec<C>],
    ord: &ModuleOrder,
    full: bool,
    track: bool,
    skip: Option<usize>,
) -> Division<C> {
    let mut quotients = track.then(|| vec![Vec::new(); basis.len()]);
    let mut rem = Vec::new();
    let mut f = f;
    let mut start = 0;
    while start < f.t.len() {
        let (m, pos, c) = &f.t[start];
        match find_reducer(m, *pos, basis, skip) {
            Some(k) => {
                let g = &basis[k];
                let q = g.t[0].0.quotient_of(m);
                let c = c.clone();
                if let Some(qs) = quotients.as_mut() {
                    qs[k].push((q.clone(), c.clone()));
                }
                f = f.sub_mul_from(start, &c, &q, g, ord);
                start = 0;
            }
            None => {
                if !full {
                    break;
                }
                rem.push(f.t[start].clone());
                start += 1;
            }
        }
    }
    rem.extend(f.t.drain(start..));
    Division { remainder: SVec { t: rem }, quotients }
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    pos: usize,
}

fn spoly<C: Field>(a: &SVec<C>, b: &SVec<C>, lcm: &Monomial, ord: &ModuleOrder) -> SVec<C> {
    let ua = a.t[0].0.quotient_of(lcm);
    let ub = b.t[0].0.quotient_of(lcm);
    let left = a.mul_term(&ua, &C::one());
    left.sub_mul_from(0, &C::one(), &ub, b, ord)
}

/// Buchberger's algorithm with the Gebauer-Moeller criteria. Returns the
/// reduced Groebner basis (monic, sorted ascending by leading term).
pub fn groebner<C: Field>(gens: Vec<SVec<C>>, ord: &ModuleOrder, rank: usize) -> Vec<SVec<C>> {
    let mut basis: Vec<SVec<C>> = Vec::new();
    let mut active: Vec<bool> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let product_ok = rank == 1;

    let mut todo: Vec<SVec<C>> = gens.into_iter().filter(|g| !g.is_zero()).collect();
    // smaller generators first tends to keep intermediate results small
    todo.sort_by(|a, b| {
        let (x, y) = (a.lead().unwrap(), b.lead().unwrap());
        ord.cmp(&x.0, x.1, &y.0, y.1)
    });
    let mut todo = todo.into_iter();

    loop {
        let h = if let Some(g) = todo.next() {
            g
        } else if !pairs.is_empty() {
            let best = (0..pairs.len())
                .min_by(|&a, &b| {
                    let (p, q) = (&pairs[a], &pairs[b]);
                    ord.cmp(&p.lcm, p.pos, &q.lcm, q.pos).then((p.j, p.i).cmp(&(q.j, q.i)))
                })
                .unwrap();
            let p = pairs.swap_remove(best);
            spoly(&basis[p.i], &basis[p.j], &p.lcm, ord)
        } else {
            break;
        };
        let h = reduce(h, &basis, ord, true, false, None).remainder;
        if h.is_zero() {
            continue;
        }
        let h = h.monic();
        let k = basis.len();
        let (hm, hp) = (h.t[0].0.clone(), h.t[0].1);

        // new pairs (i, k)
        let cands: Vec<(usize, Monomial, bool)> = (0..k)
            .filter(|&i| active[i] && basis[i].t[0].1 == hp)
            .map(|i| {
                let gm = &basis[i].t[0].0;
                (i, gm.lcm(&hm), product_ok && gm.is_coprime(&hm))
            })
            .collect();
        let mut kept: Vec<usize> = Vec::new();
        for (idx, (_, l, coprime)) in cands.iter().enumerate() {
            let dominated_later =
                cands.iter().skip(idx + 1).any(|(_, l2, _)| l2.divides(l));
            let dominated_kept = kept.iter().any(|&t| cands[t].1.divides(l));
            if *coprime || !(dominated_later || dominated_kept) {
                kept.push(idx);
            }
        }
        // drop old pairs whose lcm is a multiple of lt(h) strictly beyond the new lcms
        pairs.retain(|p| {
            if p.pos != hp || !hm.divides(&p.lcm) {
                return true;
            }
            let li = basis[p.i].t[0].0.lcm(&hm);
            let lj = basis[p.j].t[0].0.lcm(&hm);
            li == p.lcm || lj == p.lcm
        });
        for idx in kept {
            let (i, l, coprime) = &cands[idx];
            if !*coprime {
                pairs.push(Pair { i: *i, j: k, lcm: l.clone(), pos: hp });
            }
        }
        for i in 0..k {
            if active[i] && basis[i].t[0].1 == hp && hm.divides(&basis[i].t[0].0) {
                active[i] = false;
            }
        }
        basis.push(h);
        active.push(true);
    }
    interreduce(basis, ord)
}

/// Minimalizes and fully interreduces a Groebner basis.
pub fn interreduce<C: Field>(basis: Vec<SVec<C>>, ord: &ModuleOrder) -> Vec<SVec<C>> {
    let n = basis.len();
    let mut keep = vec![true; n];
    for i in 0..n {
        let (mi, pi, _) = basis[i].lead().unwrap();
        for j in 0..n {
            if i == j || !keep[j] {
                continue;
            }
            let (mj, pj, _) = basis[j].lead().unwrap();
            if pi == pj && mj.divides(mi) && (mj != mi || j < i) {
                keep[i] = false;
                break;
            }
        }
    }
    let mut min: Vec<SVec<C>> = basis.into_iter().zip(keep).filter(|(_, k)| *k).map(|(g, _)| g).collect();
    for i in 0..min.len() {
        let g = std::mem::replace(&mut min[i], SVec::zero());
        // the leading term is irreducible by the others, so reduce the tail
        let head = g.t[0].clone();
        let tail = SVec { t: g.t[1..].to_vec() };
        let r = reduce(tail, &min, ord, true, false, Some(i)).remainder;
        let mut t = vec![head];
        t.extend(r.t);
        min[i] = SVec { t }.monic();
    }
    min.sort_by(|a, b| {
        let (x, y) = (a.lead().unwrap(), b.lead().unwrap());
        match ord.cmp(&x.0, x.1, &y.0, y.1) {
            Ordering::Equal => Ordering::Equal,
            o => o,
        }
    });
    min
}

/// True iff every S-pair of `basis` reduces to zero.
pub fn is_groebner<C: Field>(basis: &[SVec<C>], ord: &ModuleOrder) -> bool {
    let monic: Vec<SVec<C>> = basis.iter().filter(|g| !g.is_zero()).cloned().map(SVec::monic).collect();
    for i in 0..monic.len() {
        for j in i + 1..monic.len() {
            let (a, b) = (&monic[i].t[0], &monic[j].t[0]);
            if a.1 != b.1 {
                continue;
            }
            let s = spoly(&monic[i], &monic[j], &a.0.lcm(&b.0), ord);
            if !reduce(s, &monic, ord, false, false, None).remainder.is_zero() {
                return false;
            }
        }
    }
    true
}
