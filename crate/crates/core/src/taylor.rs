//! Order-by-order evaluation of polynomials along series that are only
//! known incrementally.
//!
//! Every monomial that occurs in the input polynomials, together with its
//! chain of prefixes, becomes a node `parent · x_v`. Pushing the k-th
//! coefficient of every variable yields the k-th coefficient of every node
//! (one Cauchy-product term sum per node) and hence of every polynomial.
//! Coefficient k of any polynomial depends only on variable coefficients
//! `0..=k`, which is what lets an ODE solver feed back `x_{k+1}`.

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::poly::MultiPoly;
use crate::rational::Rational;

struct Node {
    /// `None` for the constant monomial.
    parent: Option<(usize, usize)>,
    coeffs: Vec<Rational>,
}

pub(crate) struct TaylorTape {
    vars: Vec<Vec<Rational>>,
    nodes: Vec<Node>,
    polys: Vec<Vec<(usize, Rational)>>,
    order: usize,
}

impl TaylorTape {
    pub(crate) fn new(nvars: usize, polys: &[&MultiPoly]) -> Self {
        let mut index: HashMap<Vec<u32>, usize> = HashMap::new();
        let mut monos: Vec<Vec<u32>> = Vec::new();
        for p in polys {
            for (m, _) in p.terms() {
                collect_prefixes(m.exponents(), &mut index, &mut monos);
            }
        }
        monos.sort_by_key(|e| (e.iter().sum::<u32>(), e.clone()));
        let index: HashMap<Vec<u32>, usize> = monos.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        let nodes = monos
            .iter()
            .map(|e| {
                let parent = e.iter().position(|&x| x > 0).map(|v| {
                    let mut pe = e.clone();
                    pe[v] -= 1;
                    (index[&pe], v)
                });
                Node {
                    parent,
                    coeffs: Vec::new(),
                }
            })
            .collect();
        let polys = polys
            .iter()
            .map(|p| p.terms().map(|(m, c)| (index[m.exponents()], c.clone())).collect())
            .collect();
        TaylorTape {
            vars: vec![Vec::new(); nvars],
            nodes,
            polys,
            order: 0,
        }
    }

    /// Appends the next coefficient of every variable and returns the
    /// coefficient of the same order of every polynomial.
    pub(crate) fn advance(&mut self, next: &[Rational]) -> Vec<Rational> {
        debug_assert_eq!(next.len(), self.vars.len());
        for (v, c) in self.vars.iter_mut().zip(next) {
            v.push(c.clone());
        }
        let k = self.order;
        self.order += 1;
        for i in 0..self.nodes.len() {
            let value = match self.nodes[i].parent {
                None => {
                    if k == 0 {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                }
                Some((p, v)) => {
                    let parent = &self.nodes[p].coeffs;
                    let var = &self.vars[v];
                    let mut acc = Rational::zero();
                    for j in 0..=k {
                        let a = &parent[j];
                        if a.is_zero() {
                            continue;
                        }
                        let b = &var[k - j];
                        if !b.is_zero() {
                            acc += a * b;
                        }
                    }
                    acc
                }
            };
            self.nodes[i].coeffs.push(value);
        }
        self.polys
            .iter()
            .map(|terms| {
                terms.iter().fold(Rational::zero(), |acc, (node, c)| {
                    let v = &self.nodes[*node].coeffs[k];
                    if v.is_zero() {
                        acc
                    } else {
                        acc + c * v
                    }
                })
            })
            .collect()
    }
}

fn collect_prefixes(exps: &[u32], index: &mut HashMap<Vec<u32>, usize>, monos: &mut Vec<Vec<u32>>) {
    let mut e = exps.to_vec();
    loop {
        if index.contains_key(&e) {
            return;
        }
        index.insert(e.clone(), monos.len());
        monos.push(e.clone());
        match e.iter().position(|&x| x > 0) {
            Some(v) => e[v] -= 1,
            None => return,
        }
    }
}
