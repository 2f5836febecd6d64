//! Finite groups: presentations, Todd–Coxeter coset enumeration, Cayley-table
//! groups with subgroup machinery, and orbifold signatures of surface actions.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use num_rational::Rational64;
use serde::Serialize;

use crate::complex::{close_group, subdivide, CellComplex, FlagMap};
use crate::error::{invalid, Error, Result};

/// Default limit on the number of cosets defined during an enumeration.
pub const DEFAULT_BUDGET: usize = 1_000_000;

/// A word over generators: letter `+(i+1)` is generator `i`, `-(i+1)` its inverse.
pub type Word = Vec<i32>;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relators: Vec<Word>,
}

fn free_reduce(w: &mut Word) {
    let mut out: Word = Vec::with_capacity(w.len());
    for &x in w.iter() {
        if out.last() == Some(&-x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    *w = out;
}

fn invert(w: &[i32]) -> Word {
    w.iter().rev().map(|&x| -x).collect()
}

fn power(w: &[i32], n: i64) -> Word {
    let base = if n < 0 { invert(w) } else { w.to_vec() };
    let mut out = Vec::with_capacity(base.len() * n.unsigned_abs() as usize);
    for _ in 0..n.unsigned_abs() {
        out.extend_from_slice(&base);
    }
    out
}

impl Presentation {
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Self> {
        let n = generators.len() as i32;
        if generators.is_empty() {
            return Err(invalid("a presentation needs at least one generator"));
        }
        for w in &relators {
            if w.is_empty() {
                return Err(invalid("empty relator"));
            }
            if w.iter().any(|&x| x == 0 || x.abs() > n) {
                return Err(invalid("relator uses an undeclared generator"));
            }
        }
        Ok(Self { generators, relators })
    }

    /// `⟨a,b | a^{2g+2} = b^4 = (ab)^2 = [a,b^2] = 1⟩`, of order `8g+8`.
    pub fn accola_maclachlan(g: usize) -> Self {
        format!("a, b | a^{} = 1, b^4 = 1, (a b)^2 = 1, [a, b^2] = 1", 2 * g + 2).parse().expect("well-formed")
    }

    /// `⟨a,b | a^{2g+2} = b^4 = (ab)^2 = 1, b²ab² = a^{g+2}⟩`, of order `8g+8`.
    pub fn kulkarni(g: usize) -> Self {
        format!("a, b | a^{} = 1, b^4 = 1, (a b)^2 = 1, b^2 a b^2 = a^{}", 2 * g + 2, g + 2).parse().expect("well-formed")
    }

    /// `⟨a,b | a^{4g} = b^4 = (ab)^2 = 1, b^2 = a^{2g}⟩`, of order `8g`.
    pub fn wiman_quotient(g: usize) -> Self {
        format!("a, b | a^{} = 1, b^4 = 1, (a b)^2 = 1, b^2 = a^{}", 4 * g, 2 * g).parse().expect("well-formed")
    }

    fn format_word(&self, w: &[i32]) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        // group runs of one letter into powers
        let mut parts = Vec::new();
        let mut i = 0;
        while i < w.len() {
            let mut j = i;
            while j < w.len() && w[j] == w[i] {
                j += 1;
            }
            let name = &self.generators[(w[i].unsigned_abs() - 1) as usize];
            let exp = (j - i) as i64 * w[i].signum() as i64;
            parts.push(if exp == 1 { name.clone() } else { format!("{name}^{exp}") });
            i = j;
        }
        parts.join(" ")
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self.relators.iter().map(|w| format!("{} = 1", self.format_word(w))).collect();
        write!(f, "{} | {}", self.generators.join(", "), rels.join(", "))
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    gens: &'a [String],
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected '{}'", c as char))
        }
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if self.src.get(self.pos) == Some(&b'-') {
            self.pos += 1;
        }
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .map_or_else(|| self.err("expected an integer"), Ok)
    }

    fn identifier(&mut self) -> Result<Word> {
        let start = self.pos;
        while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        if let Some(i) = self.gens.iter().position(|g| g == name) {
            return Ok(vec![i as i32 + 1]);
        }
        // juxtaposed single-letter generators, as in "ab"
        let mut out = Vec::new();
        for ch in name.chars() {
            match self.gens.iter().position(|g| g.len() == 1 && g.starts_with(ch)) {
                Some(i) => out.push(i as i32 + 1),
                None => {
                    self.pos = start;
                    return self.err(format!("unknown generator '{name}'"));
                }
            }
        }
        Ok(out)
    }

    fn atom(&mut self) -> Result<Word> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let w = self.word()?;
                self.expect(b')')?;
                Ok(w)
            }
            Some(b'[') => {
                self.pos += 1;
                let x = self.word()?;
                self.expect(b',')?;
                let y = self.word()?;
                self.expect(b']')?;
                // [x, y] = x⁻¹ y⁻¹ x y
                let mut w = invert(&x);
                w.extend(invert(&y));
                w.extend(x);
                w.extend(y);
                Ok(w)
            }
            Some(b'1') => {
                self.pos += 1;
                Ok(Vec::new())
            }
            Some(c) if c.is_ascii_alphabetic() => self.identifier(),
            _ => self.err("expected a generator, '(', '[' or '1'"),
        }
    }

    fn factor(&mut self) -> Result<Word> {
        let mut w = self.atom()?;
        loop {
            match self.peek() {
                Some(b'^') => {
                    self.pos += 1;
                    let n = self.integer()?;
                    w = power(&w, n);
                }
                Some(b'\'') => {
                    self.pos += 1;
                    w = invert(&w);
                }
                _ => return Ok(w),
            }
        }
    }

    fn word(&mut self) -> Result<Word> {
        let mut w = Vec::new();
        while let Some(c) = self.peek() {
            if c == b'(' || c == b'[' || c == b'1' || c.is_ascii_alphabetic() {
                w.extend(self.factor()?);
            } else if c == b'*' || c == b'.' {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok(w)
    }

    /// `w₁ = w₂ = … = wₙ` becomes the relators `wᵢ wₙ⁻¹`.
    fn relation(&mut self) -> Result<Vec<Word>> {
        let mut sides = vec![self.word()?];
        while self.peek() == Some(b'=') {
            self.pos += 1;
            sides.push(self.word()?);
        }
        let last = sides.pop().expect("at least one side");
        if sides.is_empty() {
            return Ok(vec![last]);
        }
        Ok(sides
            .into_iter()
            .map(|mut w| {
                w.extend(invert(&last));
                w
            })
            .collect())
    }
}

impl std::str::FromStr for Presentation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bar = s.find('|').ok_or(Error::Parse { pos: s.len(), msg: "missing '|'".into() })?;
        let mut generators = Vec::new();
        for g in s[..bar].split(',') {
            let g = g.trim();
            if g.is_empty() || !g.chars().next().unwrap().is_ascii_alphabetic() || !g.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                return Err(Error::Parse { pos: 0, msg: format!("bad generator name '{g}'") });
            }
            if generators.iter().any(|x| x == g) {
                return Err(Error::Parse { pos: 0, msg: format!("generator '{g}' declared twice") });
            }
            generators.push(g.to_string());
        }
        let mut p = Parser { src: s.as_bytes(), pos: bar + 1, gens: &generators };
        let mut relators = Vec::new();
        if p.peek().is_some() {
            loop {
                for mut w in p.relation()? {
                    free_reduce(&mut w);
                    if !w.is_empty() {
                        relators.push(w);
                    }
                }
                match p.peek() {
                    Some(b',') => p.pos += 1,
                    None => break,
                    Some(_) => return p.err("expected ',' or end of input"),
                }
            }
        }
        Presentation::new(generators, relators)
    }
}

/// Index of the subgroup generated by `subgroup` in the presented group, by
/// HLT-style Todd–Coxeter enumeration with coincidence processing.
pub fn coset_enumerate(pres: &Presentation, subgroup: &[Word], budget: usize) -> Result<usize> {
    Enumerator::new(pres.generators.len(), budget).run(&pres.relators, subgroup)
}

const UNDEF: u32 = u32::MAX;

struct Enumerator {
    cols: usize,
    table: Vec<u32>,
    parent: Vec<u32>,
    budget: usize,
    queue: Vec<u32>,
}

impl Enumerator {
    fn new(ngens: usize, budget: usize) -> Self {
        let cols = 2 * ngens;
        Enumerator { cols, table: vec![UNDEF; cols], parent: vec![0], budget, queue: Vec::new() }
    }

    fn col(x: i32) -> usize {
        let g = (x.unsigned_abs() - 1) as usize;
        if x > 0 {
            2 * g
        } else {
            2 * g + 1
        }
    }

    fn get(&self, c: u32, col: usize) -> u32 {
        self.table[c as usize * self.cols + col]
    }

    fn set(&mut self, c: u32, col: usize, v: u32) {
        self.table[c as usize * self.cols + col] = v;
    }

    fn is_live(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn define(&mut self, c: u32, col: usize) -> Result<u32> {
        let n = self.parent.len();
        if n >= self.budget {
            return Err(Error::BudgetExhausted(self.budget));
        }
        let d = n as u32;
        self.parent.push(d);
        self.table.extend(std::iter::repeat_n(UNDEF, self.cols));
        self.set(c, col, d);
        self.set(d, col ^ 1, c);
        Ok(d)
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut r = c;
        while self.parent[r as usize] != r {
            r = self.parent[r as usize];
        }
        let mut x = c;
        while self.parent[x as usize] != r {
            let next = self.parent[x as usize];
            self.parent[x as usize] = r;
            x = next;
        }
        r
    }

    fn merge(&mut self, a: u32, b: u32) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a != b {
            let (lo, hi) = (a.min(b), a.max(b));
            self.parent[hi as usize] = lo;
            self.queue.push(hi);
        }
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let e = self.queue[i];
            i += 1;
            for col in 0..self.cols {
                let f = self.get(e, col);
                if f == UNDEF {
                    continue;
                }
                if self.get(f, col ^ 1) == e {
                    self.set(f, col ^ 1, UNDEF);
                }
                let (e1, f1) = (self.rep(e), self.rep(f));
                let t = self.get(e1, col);
                if t != UNDEF {
                    self.merge(f1, t);
                } else {
                    let t = self.get(f1, col ^ 1);
                    if t != UNDEF {
                        self.merge(e1, t);
                    } else {
                        self.set(e1, col, f1);
                        self.set(f1, col ^ 1, e1);
                    }
                }
            }
        }
    }

    fn scan_and_fill(&mut self, c: u32, w: &[i32]) -> Result<()> {
        if w.is_empty() {
            return Ok(());
        }
        let mut f = c;
        let mut b = c;
        let mut i = 0usize;
        let mut j = w.len() as isize - 1;
        loop {
            while (i as isize) <= j && self.get(f, Self::col(w[i])) != UNDEF {
                f = self.get(f, Self::col(w[i]));
                i += 1;
            }
            if (i as isize) > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i as isize && self.get(b, Self::col(w[j as usize]) ^ 1) != UNDEF {
                b = self.get(b, Self::col(w[j as usize]) ^ 1);
                j -= 1;
            }
            if j < i as isize {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i as isize {
                let col = Self::col(w[i]);
                self.set(f, col, b);
                self.set(b, col ^ 1, f);
                return Ok(());
            }
            self.define(f, Self::col(w[i]))?;
        }
    }

    fn run(mut self, relators: &[Word], subgroup: &[Word]) -> Result<usize> {
        for w in subgroup {
            self.scan_and_fill(0, w)?;
        }
        let mut c = 0u32;
        while (c as usize) < self.parent.len() {
            for r in relators {
                if !self.is_live(c) {
                    break;
                }
                self.scan_and_fill(c, r)?;
            }
            if self.is_live(c) {
                for col in 0..self.cols {
                    if self.get(c, col) == UNDEF {
                        self.define(c, col)?;
                    }
                }
            }
            c += 1;
        }
        Ok((0..self.parent.len() as u32).filter(|&c| self.is_live(c)).count())
    }
}

/// A finite group given by its Cayley table; element 0 is the identity.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    n: usize,
    table: Vec<u32>,
    inv: Vec<u32>,
}

impl FiniteGroup {
    /// Validates identity and inverse laws exhaustively and associativity on a sample.
    pub fn from_table(n: usize, table: Vec<u32>) -> Result<Self> {
        if n == 0 || table.len() != n * n || table.iter().any(|&x| x as usize >= n) {
            return Err(invalid("malformed group table"));
        }
        let g = Self::from_table_unchecked(n, table);
        for a in 0..n {
            if g.mul(0, a) != a || g.mul(a, 0) != a {
                return Err(invalid("element 0 is not the identity"));
            }
            if g.mul(a, g.inverse(a)) != 0 || g.mul(g.inverse(a), a) != 0 {
                return Err(invalid(format!("element {a} has no inverse")));
            }
        }
        let step = (n / 17).max(1);
        for a in (0..n).step_by(step) {
            for b in (0..n).step_by(step) {
                for c in (0..n).step_by(step) {
                    if g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c)) {
                        return Err(invalid("table is not associative"));
                    }
                }
            }
        }
        Ok(g)
    }

    pub(crate) fn from_table_unchecked(n: usize, table: Vec<u32>) -> Self {
        let mut inv = vec![0u32; n];
        for a in 0..n {
            if let Some(b) = (0..n).find(|&b| table[a * n + b] == 0) {
                inv[a] = b as u32;
            }
        }
        FiniteGroup { n, table, inv }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b] as usize
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    pub fn pow(&self, a: usize, k: i64) -> usize {
        let base = if k < 0 { self.inverse(a) } else { a };
        (0..k.unsigned_abs()).fold(0, |acc, _| self.mul(acc, base))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Sorted elements of the subgroup generated by `gens`.
    pub fn generate(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.n];
        seen[0] = true;
        let mut out = vec![0usize];
        let mut i = 0;
        while i < out.len() {
            for &g in gens {
                let h = self.mul(out[i], g);
                if !seen[h] {
                    seen[h] = true;
                    out.push(h);
                }
            }
            i += 1;
        }
        out.sort_unstable();
        out
    }

    pub fn centralizer(&self, elements: &[usize]) -> Vec<usize> {
        (0..self.n).filter(|&g| elements.iter().all(|&x| self.mul(g, x) == self.mul(x, g))).collect()
    }

    pub fn normalizer(&self, subgroup: &[usize]) -> Vec<usize> {
        let set: HashSet<usize> = subgroup.iter().copied().collect();
        (0..self.n)
            .filter(|&g| subgroup.iter().all(|&h| set.contains(&self.mul(self.mul(g, h), self.inverse(g)))))
            .collect()
    }

    pub fn is_normal(&self, subgroup: &[usize]) -> bool {
        self.normalizer(subgroup).len() == self.n
    }

    /// The subgroup on `elements` (which must be closed and contain 0) as a group
    /// of its own; the second value lists the original ids in the new order.
    pub fn subgroup(&self, elements: &[usize]) -> Result<(FiniteGroup, Vec<usize>)> {
        let mut ids: Vec<usize> = elements.to_vec();
        ids.sort_unstable();
        ids.dedup();
        if ids.first() != Some(&0) {
            return Err(invalid("subgroup must contain the identity"));
        }
        let mut index = vec![u32::MAX; self.n];
        for (i, &x) in ids.iter().enumerate() {
            index[x] = i as u32;
        }
        let m = ids.len();
        let mut table = vec![0u32; m * m];
        for (i, &a) in ids.iter().enumerate() {
            for (j, &b) in ids.iter().enumerate() {
                let p = index[self.mul(a, b)];
                if p == u32::MAX {
                    return Err(invalid("elements are not closed under products"));
                }
                table[i * m + j] = p;
            }
        }
        Ok((FiniteGroup::from_table_unchecked(m, table), ids))
    }

    /// `G/N` for a normal subgroup `N`; the second value maps each element to its coset.
    pub fn quotient(&self, normal: &[usize]) -> Result<(FiniteGroup, Vec<usize>)> {
        if !self.is_normal(normal) || self.generate(normal).len() != normal.len() {
            return Err(invalid("not a normal subgroup"));
        }
        let mut coset = vec![usize::MAX; self.n];
        let mut reps = Vec::new();
        for g in 0..self.n {
            if coset[g] != usize::MAX {
                continue;
            }
            let id = reps.len();
            reps.push(g);
            for &h in normal {
                coset[self.mul(g, h)] = id;
            }
        }
        let m = reps.len();
        let mut table = vec![0u32; m * m];
        for (i, &a) in reps.iter().enumerate() {
            for (j, &b) in reps.iter().enumerate() {
                table[i * m + j] = coset[self.mul(a, b)] as u32;
            }
        }
        Ok((FiniteGroup::from_table_unchecked(m, table), coset))
    }

    pub fn eval_word(&self, w: &[i32], images: &[usize]) -> usize {
        w.iter().fold(0, |acc, &x| {
            let g = images[(x.unsigned_abs() - 1) as usize];
            self.mul(acc, if x > 0 { g } else { self.inverse(g) })
        })
    }

    pub fn satisfies(&self, pres: &Presentation, images: &[usize]) -> bool {
        images.len() == pres.generators.len() && pres.relators.iter().all(|r| self.eval_word(r, images) == 0)
    }

    /// Generator images (pairs, for two-generator presentations) that satisfy
    /// the relators and generate the whole group.
    pub fn find_generating_images(&self, pres: &Presentation) -> Option<Vec<usize>> {
        if pres.generators.len() != 2 {
            return None;
        }
        // a generator's order must divide every pure power relator
        let pure_order = |gen: i32| -> Option<usize> {
            pres.relators
                .iter()
                .filter(|r| r.iter().all(|&x| x == gen) || r.iter().all(|&x| x == -gen))
                .map(|r| r.len())
                .min()
        };
        let candidates = |gen: i32| -> Vec<usize> {
            match pure_order(gen) {
                Some(k) => (0..self.n).filter(|&x| k % self.element_order(x) == 0).collect(),
                None => (0..self.n).collect(),
            }
        };
        let (ca, cb) = (candidates(1), candidates(2));
        for &a in &ca {
            for &b in &cb {
                let images = [a, b];
                if self.satisfies(pres, &images) && self.generate(&images).len() == self.n {
                    return Some(images.to_vec());
                }
            }
        }
        None
    }
}

/// Certifies `G ≅ ⟨pres⟩`: relators hold on the images, the images generate
/// `G`, and the presented group has order `|G|`.
pub fn verify_presentation(g: &FiniteGroup, images: &[usize], pres: &Presentation) -> Result<bool> {
    if !g.satisfies(pres, images) || g.generate(images).len() != g.order() {
        return Ok(false);
    }
    Ok(coset_enumerate(pres, &[], DEFAULT_BUDGET)? == g.order())
}

/// Orbifold signature `(h; m₁, …, m_r)` of a surface quotient.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Signature {
    pub genus: i64,
    pub cone_orders: Vec<usize>,
}

impl Signature {
    /// `2 − 2h − Σ(1 − 1/mᵢ)`.
    pub fn orbifold_euler(&self) -> Rational64 {
        let mut x = Rational64::from_integer(2 - 2 * self.genus);
        for &m in &self.cone_orders {
            x -= Rational64::new(m as i64 - 1, m as i64);
        }
        x
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cones: Vec<String> = self.cone_orders.iter().map(|m| m.to_string()).collect();
        if cones.is_empty() {
            write!(f, "({}; -)", self.genus)
        } else {
            write!(f, "({}; {})", self.genus, cones.join(", "))
        }
    }
}

/// Signature of `C / G` for a group of orientation-preserving automorphisms of a
/// closed connected orientable surface complex. `gens` generate `G`.
pub fn orbifold_signature(c: &CellComplex, gens: &[FlagMap]) -> Result<Signature> {
    if c.dim() != 2 {
        return Err(invalid("signatures are defined for surfaces"));
    }
    let parity = c.flag_parity().ok_or(Error::NotOrientable)?;
    if c.components().0 != 1 {
        return Err(invalid("surface must be connected"));
    }
    if let Some(bad) = gens.iter().position(|g| !g.is_automorphism(c)) {
        return Err(invalid(format!("generator {bad} is not a cellular automorphism")));
    }
    let group = close_group(c.flag_count(), gens);
    if let Some(bad) = group.iter().position(|g| parity[g.apply(0)] != parity[0]) {
        return Err(Error::OrientationReversing(bad));
    }
    let order = group.len();
    let s1 = subdivide(c)?;
    let s2 = subdivide(&s1)?;
    // a flag of the second subdivision is (flag of c) · 36 + (two orderings of 3 types),
    // and automorphisms act on the first factor only
    const BLOCK: usize = 36;
    debug_assert_eq!(s2.flag_count(), c.flag_count() * BLOCK);
    let lift = |g: &FlagMap, x: usize| g.apply(x / BLOCK) * BLOCK + x % BLOCK;

    // orbit counts per dimension give the Euler characteristic of the quotient
    let mut euler_q = 0i64;
    let mut cones = Vec::new();
    for d in 0..=2 {
        let count = s2.cell_count(d);
        let mut seen = vec![false; count];
        let mut orbits = 0i64;
        for cell in 0..count {
            if seen[cell] {
                continue;
            }
            orbits += 1;
            let mut orbit = BTreeSet::new();
            for g in &group {
                let img = s2.cell_of(d, lift(g, s2.rep(d, cell)));
                seen[img] = true;
                orbit.insert(img);
            }
            let stabilizer = order / orbit.len();
            if stabilizer > 1 {
                if d != 0 {
                    return Err(invalid("an edge or face has a non-trivial stabilizer after subdivision"));
                }
                cones.push(stabilizer);
            }
        }
        euler_q += if d % 2 == 0 { orbits } else { -orbits };
    }
    if (2 - euler_q) % 2 != 0 {
        return Err(invalid("quotient has odd Euler characteristic"));
    }
    cones.sort_unstable();
    let sig = Signature { genus: (2 - euler_q) / 2, cone_orders: cones };
    if sig.orbifold_euler() * Rational64::from_integer(order as i64) != Rational64::from_integer(c.euler()) {
        return Err(invalid("Riemann–Hurwitz identity fails"));
    }
    Ok(sig)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn order(s: &str) -> usize {
        coset_enumerate(&s.parse().unwrap(), &[], DEFAULT_BUDGET).unwrap()
    }

    #[test]
    fn parse_and_format() {
        let p: Presentation = "a, b | a^6 = 1, b^4 = 1, (a b)^2 = 1, [a, b^2] = 1".parse().unwrap();
        assert_eq!(p.generators, vec!["a", "b"]);
        assert_eq!(p.relators[0], vec![1; 6]);
        assert_eq!(p.relators[2], vec![1, 2, 1, 2]);
        assert_eq!(p.relators[3], vec![-1, -2, -2, 1, 2, 2]);
        let again: Presentation = p.to_string().parse().unwrap();
        assert_eq!(again, p);
        let q: Presentation = "x, y | x' y^-2 = y x".parse().unwrap();
        assert_eq!(q.relators, vec![vec![-1, -2, -2, -1, -2]]);
        let juxt: Presentation = "a, b | (ab)^2".parse().unwrap();
        assert_eq!(juxt.relators, vec![vec![1, 2, 1, 2]]);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!("a, b".parse::<Presentation>(), Err(Error::Parse { .. })));
        assert!(matches!("a | c".parse::<Presentation>(), Err(Error::Parse { .. })));
        assert!(matches!("a | a^".parse::<Presentation>(), Err(Error::Parse { .. })));
        assert!(matches!("a | (a".parse::<Presentation>(), Err(Error::Parse { .. })));
    }

    #[test]
    fn classical_orders() {
        assert_eq!(order("a | a"), 1);
        assert_eq!(order("a | a^7"), 7);
        assert_eq!(order("a, b | a^2, b^2, (a b)^5"), 10);
        assert_eq!(order("a, b | a^2, b^3, (a b)^5"), 60);
        assert_eq!(order("a, b | a^4, b^2 = a^2, b' a b = a'"), 8);
        assert_eq!(order("a, b, c | a^2, b^2, c^2, (a b)^3, (b c)^4, (a c)^2"), 48);
    }

    #[test]
    fn family_presentation_orders() {
        for g in 2..8 {
            assert_eq!(coset_enumerate(&Presentation::accola_maclachlan(g), &[], DEFAULT_BUDGET).unwrap(), 8 * g + 8);
            assert_eq!(coset_enumerate(&Presentation::wiman_quotient(g), &[], DEFAULT_BUDGET).unwrap(), 8 * g);
        }
        for g in [3, 7, 11] {
            assert_eq!(coset_enumerate(&Presentation::kulkarni(g), &[], DEFAULT_BUDGET).unwrap(), 8 * g + 8);
        }
    }

    #[test]
    fn subgroup_index() {
        let p: Presentation = "a, b | a^2, b^3, (a b)^5".parse().unwrap();
        assert_eq!(coset_enumerate(&p, &[vec![1]], DEFAULT_BUDGET).unwrap(), 30);
        assert_eq!(coset_enumerate(&p, &[vec![2], vec![1, 2]], DEFAULT_BUDGET).unwrap(), 1);
    }

    #[test]
    fn budget_is_reported() {
        let free: Presentation = "a, b | [a, b]".parse().unwrap();
        assert_eq!(coset_enumerate(&free, &[], 1000), Err(Error::BudgetExhausted(1000)));
    }

    fn cyclic(n: usize) -> FiniteGroup {
        FiniteGroup::from_table(n, (0..n * n).map(|i| ((i / n + i % n) % n) as u32).collect()).unwrap()
    }

    fn dihedral(n: usize) -> FiniteGroup {
        // element r^i s^e at index 2i + e
        let m = 2 * n;
        let mut table = vec![0u32; m * m];
        for x in 0..m {
            for y in 0..m {
                let (i, e) = (x / 2, x % 2);
                let (j, f) = (y / 2, y % 2);
                let k = if e == 0 { (i + j) % n } else { (i + n - j) % n };
                table[x * m + y] = (2 * k + (e ^ f)) as u32;
            }
        }
        FiniteGroup::from_table(m, table).unwrap()
    }

    #[test]
    fn finite_group_basics() {
        let d = dihedral(5);
        assert_eq!(d.order(), 10);
        assert_eq!(d.element_order(2), 5);
        assert_eq!(d.element_order(1), 2);
        assert_eq!(d.centralizer(&[0]).len(), 10);
        assert_eq!(d.centralizer(&[2]).len(), 5);
        assert_eq!(d.normalizer(&d.generate(&[1])).len(), 2);
        let rot = d.generate(&[2]);
        let (q, _) = d.quotient(&rot).unwrap();
        assert_eq!(q.order(), 2);
        let (sub, ids) = d.subgroup(&rot).unwrap();
        assert_eq!(sub.order(), 5);
        assert_eq!(ids, vec![0, 2, 4, 6, 8]);
        assert!(FiniteGroup::from_table(2, vec![0, 1, 1, 1]).is_err());
    }

    #[test]
    fn presentation_certificates() {
        let d = dihedral(5);
        let p: Presentation = "a, b | a^2, b^2, (a b)^5".parse().unwrap();
        assert!(verify_presentation(&d, &[1, 3], &p).unwrap());
        assert!(!verify_presentation(&d, &[0, 0], &p).unwrap());
        assert!(!verify_presentation(&cyclic(10), &[5, 5], &p).unwrap());
        assert!(d.find_generating_images(&p).is_some());
        let c: Presentation = "a, b | a^10, b^2, [a, b]".parse().unwrap();
        assert!(d.find_generating_images(&c).is_none());
    }

    proptest! {
        #[test]
        fn cyclic_orders(n in 1usize..60) {
            prop_assert_eq!(order(&format!("a | a^{n}")), n);
        }

        #[test]
        fn dihedral_orders(n in 2usize..40) {
            prop_assert_eq!(order(&format!("r, s | r^{n}, s^2, (r s)^2")), 2 * n);
        }

        #[test]
        fn words_evaluate_homomorphically(w1 in proptest::collection::vec(prop_oneof![Just(1i32), Just(-1), Just(2), Just(-2)], 0..12),
                                          w2 in proptest::collection::vec(prop_oneof![Just(1i32), Just(-1), Just(2), Just(-2)], 0..12)) {
            let d = dihedral(7);
            let images = [2, 1];
            let mut cat = w1.clone();
            cat.extend(&w2);
            prop_assert_eq!(d.eval_word(&cat, &images), d.mul(d.eval_word(&w1, &images), d.eval_word(&w2, &images)));
            prop_assert_eq!(d.eval_word(&invert(&w1), &images), d.inverse(d.eval_word(&w1, &images)));
        }
    }
}
