use alloc::collections::BTreeMap;
use alloc::format;
use alloc::rc::Rc;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::ring::{Coeff, Ring};
use crate::scalar::QScalar;

/// A word over generator indices.
pub type Word = Vec<u8>;

/// Oriented rewrite rule `lhs[0] lhs[1] → Σ c·w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    pub lhs: [u8; 2],
    pub rhs: Vec<(Word, QScalar)>,
}

/// Generators plus oriented quadratic rules.
///
/// Every rule strictly decreases its left-hand side in shortlex order, so
/// rewriting terminates and a word's shortlex rank bounds the length of any
/// rewrite sequence starting from it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteSystem {
    labels: Vec<String>,
    rules: Vec<Rule>,
    table: Vec<Option<usize>>,
}

fn shortlex_less(a: &[u8], b: &[u8]) -> bool {
    a.len() < b.len() || (a.len() == b.len() && a < b)
}

impl RewriteSystem {
    /// Builds a system. With `total` set, every pair `a > b` must carry a
    /// rule, so normal words are exactly the non-decreasing ones.
    pub fn new(labels: Vec<String>, rules: Vec<Rule>, total: bool) -> Result<Self> {
        let n = labels.len();
        if n > 255 {
            return Err(Error::Invalid(String::from("too many generators")));
        }
        let mut table = alloc::vec![None; n * n];
        for (idx, r) in rules.iter().enumerate() {
            let [a, b] = r.lhs;
            if a as usize >= n || b as usize >= n {
                return Err(Error::Invalid(format!("rule {} names an unknown generator", idx)));
            }
            if a <= b {
                return Err(Error::Invalid(format!(
                    "rule {}{} is not an inverted pair",
                    labels[a as usize], labels[b as usize]
                )));
            }
            for (w, _) in &r.rhs {
                if w.iter().any(|&g| g as usize >= n) {
                    return Err(Error::Invalid(format!("rule {} names an unknown generator", idx)));
                }
                if !shortlex_less(w, &r.lhs) {
                    return Err(Error::Invalid(format!(
                        "rule {}{} does not decrease in shortlex order",
                        labels[a as usize], labels[b as usize]
                    )));
                }
            }
            let slot = &mut table[a as usize * n + b as usize];
            if slot.is_some() {
                return Err(Error::Invalid(format!(
                    "duplicate rule for {}{}",
                    labels[a as usize], labels[b as usize]
                )));
            }
            *slot = Some(idx);
        }
        if total {
            for a in 0..n {
                for b in 0..a {
                    if table[a * n + b].is_none() {
                        return Err(Error::Invalid(format!(
                            "missing rule for {}{}",
                            labels[a], labels[b]
                        )));
                    }
                }
            }
        }
        Ok(RewriteSystem {
            labels,
            rules,
            table,
        })
    }

    /// Free algebra on the given generators.
    pub fn free(labels: Vec<String>) -> Self {
        let n = labels.len();
        RewriteSystem {
            labels,
            rules: Vec::new(),
            table: alloc::vec![None; n * n],
        }
    }

    pub fn ngens(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, g: u8) -> &str {
        &self.labels[g as usize]
    }

    pub fn index_of(&self, label: &str) -> Option<u8> {
        self.labels.iter().position(|l| l == label).map(|i| i as u8)
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn rule(&self, a: u8, b: u8) -> Option<&[(Word, QScalar)]> {
        let n = self.labels.len();
        self.table[a as usize * n + b as usize].map(|i| self.rules[i].rhs.as_slice())
    }

    fn first_redex(&self, w: &[u8]) -> Option<usize> {
        (0..w.len().saturating_sub(1)).find(|&i| self.rule(w[i], w[i + 1]).is_some())
    }

    pub fn is_normal(&self, w: &[u8]) -> bool {
        self.first_redex(w).is_none()
    }

    /// Shortlex rank of `w`: the number of words strictly below it. Bounds
    /// the length of every rewrite sequence starting at `w`.
    pub fn termination_bound(&self, w: &[u8]) -> u128 {
        let n = self.labels.len() as u128;
        let mut shorter: u128 = 0;
        let mut pw: u128 = 1;
        for _ in 0..w.len() {
            shorter = shorter.saturating_add(pw);
            pw = pw.saturating_mul(n);
        }
        let mut rank: u128 = 0;
        for &g in w {
            rank = rank.saturating_mul(n).saturating_add(g as u128);
        }
        shorter.saturating_add(rank)
    }

    fn check_word(&self, w: &[u8]) -> Result<()> {
        match w.iter().find(|&&g| g as usize >= self.labels.len()) {
            Some(g) => Err(Error::UnknownSymbol(format!("generator #{}", g))),
            None => Ok(()),
        }
    }

    /// Exhaustive leftmost rewriting of a raw word sum.
    pub fn normal_order<C: Coeff>(&self, raw: &[(Word, C)]) -> Result<BTreeMap<Word, C>> {
        Ok(self.normal_order_traced(raw)?.0)
    }

    /// As [`normal_order`](Self::normal_order), also returning the longest
    /// rewrite chain observed and the largest termination bound among the
    /// input words.
    pub fn normal_order_traced<C: Coeff>(
        &self,
        raw: &[(Word, C)],
    ) -> Result<(BTreeMap<Word, C>, usize, u128)> {
        // pending words keyed by (length, word) so the shortlex-largest is
        // always processed first and every word is expanded once
        let mut pending: BTreeMap<(usize, Word), (C, usize)> = BTreeMap::new();
        let mut out: BTreeMap<Word, C> = BTreeMap::new();
        let mut bound = 0u128;
        let mut longest = 0usize;
        for (w, c) in raw {
            self.check_word(w)?;
            bound = bound.max(self.termination_bound(w));
            push(&mut pending, w.clone(), c.clone(), 0);
        }
        while let Some(((_, w), (c, depth))) = pending.pop_last() {
            longest = longest.max(depth);
            if c.is_zero() {
                continue;
            }
            match self.first_redex(&w) {
                None => add_into(&mut out, w, &c),
                Some(i) => {
                    for (rw, rc) in self.rule(w[i], w[i + 1]).unwrap() {
                        let mut nw = Vec::with_capacity(w.len() + rw.len() - 2);
                        nw.extend_from_slice(&w[..i]);
                        nw.extend_from_slice(rw);
                        nw.extend_from_slice(&w[i + 2..]);
                        let nc = C::from(rc.clone()).mul(&c);
                        push(&mut pending, nw, nc, depth + 1);
                    }
                }
            }
        }
        Ok((out, longest, bound))
    }

    /// Resolves every overlap `abc` with `ab` and `bc` both reducible, once
    /// rewriting `ab` first and once `bc`. Returns the overlaps whose two
    /// normal forms differ; an empty list means the system is confluent.
    pub fn overlap_failures(&self) -> Vec<[u8; 3]> {
        let mut bad = Vec::new();
        let n = self.labels.len() as u8;
        for a in 0..n {
            for b in 0..n {
                let Some(r1) = self.rule(a, b) else { continue };
                for c in 0..n {
                    let Some(r2) = self.rule(b, c) else { continue };
                    let left: Vec<(Word, QScalar)> = r1
                        .iter()
                        .map(|(w, k)| {
                            let mut v = w.clone();
                            v.push(c);
                            (v, k.clone())
                        })
                        .collect();
                    let right: Vec<(Word, QScalar)> = r2
                        .iter()
                        .map(|(w, k)| {
                            let mut v = alloc::vec![a];
                            v.extend_from_slice(w);
                            (v, k.clone())
                        })
                        .collect();
                    let l = self.normal_order(&left).expect("valid words");
                    let r = self.normal_order(&right).expect("valid words");
                    if l != r {
                        bad.push([a, b, c]);
                    }
                }
            }
        }
        bad
    }
}

fn push<C: Coeff>(pending: &mut BTreeMap<(usize, Word), (C, usize)>, w: Word, c: C, depth: usize) {
    let key = (w.len(), w);
    match pending.get_mut(&key) {
        Some((v, d)) => {
            *v = v.add(&c);
            *d = (*d).max(depth);
        }
        None => {
            pending.insert(key, (c, depth));
        }
    }
}

pub(crate) fn add_into<C: Ring>(out: &mut BTreeMap<Word, C>, w: Word, c: &C) {
    if c.is_zero() {
        return;
    }
    match out.get_mut(&w) {
        Some(v) => {
            *v = v.add(c);
            if v.is_zero() {
                out.remove(&w);
            }
        }
        None => {
            out.insert(w, c.clone());
        }
    }
}

type Terms = BTreeMap<Word, QScalar>;

/// Memoizing multiplier for normal words. Products of a normal word with a
/// single generator are cached, so repeated products in one session reuse
/// earlier work.
pub struct Orderer<'a> {
    sys: &'a RewriteSystem,
    cache: BTreeMap<(Word, u8), Rc<Terms>>,
}

impl<'a> Orderer<'a> {
    pub fn new(sys: &'a RewriteSystem) -> Self {
        Orderer {
            sys,
            cache: BTreeMap::new(),
        }
    }

    pub fn system(&self) -> &RewriteSystem {
        self.sys
    }

    /// Normal form of `w·g` for a normal word `w`.
    pub fn word_times_gen(&mut self, w: &[u8], g: u8) -> Rc<Terms> {
        let n = w.len();
        if n == 0 || self.sys.rule(w[n - 1], g).is_none() {
            let mut v = w.to_vec();
            v.push(g);
            let mut t = Terms::new();
            t.insert(v, QScalar::one());
            return Rc::new(t);
        }
        let key = (w.to_vec(), g);
        if let Some(hit) = self.cache.get(&key) {
            return hit.clone();
        }
        let sys = self.sys;
        let prefix = &w[..n - 1];
        let mut acc = Terms::new();
        for (rw, rc) in sys.rule(w[n - 1], g).unwrap() {
            let part = self.word_times_word(prefix, rw);
            for (pw, pc) in part.iter() {
                add_into(&mut acc, pw.clone(), &(pc * rc));
            }
        }
        let acc = Rc::new(acc);
        self.cache.insert(key, acc.clone());
        acc
    }

    /// Normal form of `u·v` for a normal word `u` and any word `v`.
    pub fn word_times_word(&mut self, u: &[u8], v: &[u8]) -> Terms {
        let mut cur = Terms::new();
        cur.insert(u.to_vec(), QScalar::one());
        for &g in v {
            let mut next = Terms::new();
            for (w, c) in cur.iter() {
                let prod = self.word_times_gen(w, g);
                for (pw, pc) in prod.iter() {
                    add_into(&mut next, pw.clone(), &(pc * c));
                }
            }
            cur = next;
        }
        cur
    }

    /// Product of two normal-ordered sums.
    pub fn mul<C: Coeff>(&mut self, a: &BTreeMap<Word, C>, b: &BTreeMap<Word, C>) -> BTreeMap<Word, C> {
        let mut out = BTreeMap::new();
        for (wa, ca) in a {
            for (wb, cb) in b {
                let cab = ca.mul(cb);
                let fast = match (wa.last(), wb.first()) {
                    (Some(&x), Some(&y)) => self.sys.rule(x, y).is_none(),
                    _ => true,
                };
                if fast {
                    let mut w = wa.clone();
                    w.extend_from_slice(wb);
                    add_into(&mut out, w, &cab);
                    continue;
                }
                for (w, c) in self.word_times_word(wa, wb) {
                    add_into(&mut out, w, &C::from(c).mul(&cab));
                }
            }
        }
        out
    }
}
