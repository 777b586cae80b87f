//! Exact permutation-group engine: deterministic Schreier-Sims stabilizer
//! chains, orbits, block systems, parity, and identification among the five
//! primitive groups of degree 24.

use num_bigint::BigUint;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroupError {
    #[error("permutation images are not a bijection")]
    NotBijection,
    #[error("generator degree mismatch")]
    DegreeMismatch,
    #[error("group is not transitive")]
    NotTransitive,
    #[error("group is not primitive")]
    NotPrimitive,
    #[error("order {0} is not in the degree-24 primitive classification")]
    NotInClassification(String),
    #[error("cycle entry out of range or repeated")]
    BadCycle,
}

/// A permutation of `{0, ..., n-1}`; `images[i]` is the image of `i`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self, GroupError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(GroupError::NotBijection);
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    pub fn transposition(n: usize, i: usize, j: usize) -> Self {
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(i, j);
        Permutation { images }
    }

    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self, GroupError> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut touched = vec![false; n];
        for cycle in cycles {
            for (k, &x) in cycle.iter().enumerate() {
                let y = cycle[(k + 1) % cycle.len()];
                if x >= n || y >= n || touched[x] {
                    return Err(GroupError::BadCycle);
                }
                touched[x] = true;
                images[x] = y;
            }
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, point: usize) -> usize {
        self.images[point]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x] = i;
        }
        Permutation { images }
    }

    /// `self` first, then `other`: `(self.then(other))(i) = other(self(i))`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: self.images.iter().map(|&x| other.images[x]).collect(),
        }
    }

    /// Cycle lengths in descending order, fixed points included.
    pub fn cycle_type(&self) -> Vec<usize> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut lens = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                p = self.images[p];
                len += 1;
            }
            lens.push(len);
        }
        lens.sort_unstable_by(|a, b| b.cmp(a));
        lens
    }

    /// Cycle type with fixed points dropped, e.g. `[2, 2]` for a double
    /// transposition.
    pub fn nontrivial_cycle_type(&self) -> Vec<usize> {
        self.cycle_type().into_iter().filter(|&l| l > 1).collect()
    }

    /// Sign of the permutation: `+1` or `-1`.
    pub fn parity(&self) -> i32 {
        let n = self.images.len();
        let cycles = self.cycle_type().len();
        if (n - cycles) % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

pub fn factorial(n: usize) -> BigUint {
    let mut out = BigUint::from(1u32);
    for k in 2..=n {
        out *= BigUint::from(k);
    }
    out
}

fn factorial_u128(n: usize) -> u128 {
    (2..=n as u128).product::<u128>().max(1)
}

/// The diagonal embedding `S_12 -> S_24`, acting the same way on both halves.
pub fn embed_s12_diagonal(sigma: &Permutation) -> Permutation {
    assert_eq!(sigma.degree(), 12);
    let mut images = vec![0; 24];
    for i in 0..12 {
        images[i] = sigma.apply(i);
        images[i + 12] = sigma.apply(i) + 12;
    }
    Permutation { images }
}

/// The triple-diagonal embedding `S_8 -> S_24`, acting the same way on all
/// three strands.
pub fn embed_s8_triple(sigma: &Permutation) -> Permutation {
    assert_eq!(sigma.degree(), 8);
    let mut images = vec![0; 24];
    for i in 0..8 {
        for strand in 0..3 {
            images[i + 8 * strand] = sigma.apply(i) + 8 * strand;
        }
    }
    Permutation { images }
}

/// A partition of the point set produced by block refinement. Blocks of an
/// imprimitive transitive group all have equal size; for intransitive
/// groups the refinement can return unequal classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockSystem {
    pub block_of: Vec<usize>,
    pub num_blocks: usize,
}

impl BlockSystem {
    pub fn block_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.num_blocks];
        for &b in &self.block_of {
            sizes[b] += 1;
        }
        sizes
    }

    pub fn is_uniform(&self) -> bool {
        let sizes = self.block_sizes();
        sizes.windows(2).all(|w| w[0] == w[1])
    }

    pub fn is_nontrivial(&self) -> bool {
        let n = self.block_of.len();
        self.is_uniform() && self.num_blocks > 1 && self.num_blocks < n
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.num_blocks];
        for (p, &b) in self.block_of.iter().enumerate() {
            out[b].push(p);
        }
        out
    }
}

/// Action of `gens` on the blocks of `bs`, or `None` if some generator does
/// not permute the blocks.
pub fn induced_block_action(gens: &[Permutation], bs: &BlockSystem) -> Option<Vec<Permutation>> {
    let mut out = Vec::with_capacity(gens.len());
    for g in gens {
        let mut images = vec![usize::MAX; bs.num_blocks];
        for (p, &b) in bs.block_of.iter().enumerate() {
            let target = bs.block_of[g.apply(p)];
            if images[b] == usize::MAX {
                images[b] = target;
            } else if images[b] != target {
                return None;
            }
        }
        out.push(Permutation::from_images(images).ok()?);
    }
    Some(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Primitivity {
    Primitive,
    /// Orbit partition witnessing intransitivity.
    Intransitive(Vec<Vec<usize>>),
    Imprimitive(BlockSystem),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Deg24Group {
    Psl2_23,
    Pgl2_23,
    M24,
    A24,
    S24,
}

impl Deg24Group {
    pub fn name(&self) -> &'static str {
        match self {
            Deg24Group::Psl2_23 => "PSL2(23)",
            Deg24Group::Pgl2_23 => "PGL2(23)",
            Deg24Group::M24 => "M24",
            Deg24Group::A24 => "A24",
            Deg24Group::S24 => "S24",
        }
    }
}

/// The report backing the degree-24 classification argument: transitivity,
/// primitivity, order bound, parity, and the resulting identification.
#[derive(Debug, Clone, Serialize)]
pub struct CertificateReport {
    pub order: String,
    pub transitive: bool,
    pub primitive: bool,
    pub order_exceeds_12_factorial: bool,
    pub has_odd: bool,
    pub identification: Option<String>,
    pub conclusion: String,
}

#[derive(Debug, Clone)]
struct Level {
    /// `transversal[p] = Some(u)` with `u(base point) = p`.
    transversal: Vec<Option<Permutation>>,
}

impl Level {
    fn new(point: usize, degree: usize) -> Self {
        let mut transversal = vec![None; degree];
        transversal[point] = Some(Permutation::identity(degree));
        Level { transversal }
    }

    fn orbit_len(&self) -> usize {
        self.transversal.iter().filter(|t| t.is_some()).count()
    }
}

/// Permutation group with a base and strong generating set; supports exact
/// order, membership, orbits, and block systems.
#[derive(Debug, Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    level_gens: Vec<Vec<Permutation>>,
    base: Vec<usize>,
    levels: Vec<Level>,
}

impl PermGroup {
    /// Build a verified stabilizer chain from the generators.
    pub fn generate(degree: usize, gens: &[Permutation]) -> Result<PermGroup, GroupError> {
        if gens.iter().any(|g| g.degree() != degree) {
            return Err(GroupError::DegreeMismatch);
        }
        let nontrivial: Vec<Permutation> =
            gens.iter().filter(|g| !g.is_identity()).cloned().collect();
        let mut group = PermGroup {
            degree,
            generators: gens.to_vec(),
            level_gens: Vec::new(),
            base: Vec::new(),
            levels: Vec::new(),
        };
        for g in &nontrivial {
            if group.base.iter().all(|&b| g.apply(b) == b) {
                let b = (0..degree).find(|&p| g.apply(p) != p).unwrap();
                group.push_level(b);
            }
        }
        // seed each generator at every level whose base prefix it fixes
        for g in &nontrivial {
            for l in 0..group.base.len() {
                if group.base[..l].iter().all(|&b| g.apply(b) == b) {
                    group.level_gens[l].push(g.clone());
                } else {
                    break;
                }
            }
        }
        for l in 0..group.base.len() {
            group.rebuild_level(l);
        }
        for l in (0..group.base.len()).rev() {
            group.complete_level(l);
        }
        Ok(group)
    }

    fn push_level(&mut self, point: usize) {
        self.base.push(point);
        self.level_gens.push(Vec::new());
        self.levels.push(Level::new(point, self.degree));
    }

    /// Recompute the orbit and transversal of one level by breadth-first
    /// search (deterministic: FIFO queue, generators in list order).
    fn rebuild_level(&mut self, l: usize) {
        let point = self.base[l];
        let mut level = Level::new(point, self.degree);
        let mut queue = std::collections::VecDeque::from([point]);
        while let Some(p) = queue.pop_front() {
            let u = level.transversal[p].clone().unwrap();
            for g in &self.level_gens[l] {
                let q = g.apply(p);
                if level.transversal[q].is_none() {
                    level.transversal[q] = Some(u.then(g));
                    queue.push_back(q);
                }
            }
        }
        self.levels[l] = level;
    }

    /// Sift `g` through levels `from..`, returning the residue and the index
    /// of the first level where sifting stalled (or the chain length).
    fn strip(&self, g: &Permutation, from: usize) -> (Permutation, usize) {
        let mut h = g.clone();
        for l in from..self.levels.len() {
            let target = h.apply(self.base[l]);
            match &self.levels[l].transversal[target] {
                Some(u) => h = h.then(&u.inverse()),
                None => return (h, l),
            }
        }
        (h, self.levels.len())
    }

    fn chain_product(&self) -> u128 {
        self.levels
            .iter()
            .map(|lvl| lvl.orbit_len() as u128)
            .product()
    }

    /// The product of fundamental orbit lengths is a lower bound for the
    /// group order; reaching `degree!` certifies the chain is complete.
    fn chain_is_full_symmetric(&self) -> bool {
        self.chain_product() == factorial_u128(self.degree)
    }

    fn complete_level(&mut self, l: usize) {
        'restart: loop {
            if self.chain_is_full_symmetric() {
                return;
            }
            self.rebuild_level(l);
            let orbit: Vec<usize> = (0..self.degree)
                .filter(|&p| self.levels[l].transversal[p].is_some())
                .collect();
            let gens = self.level_gens[l].clone();
            for &p in &orbit {
                let u = self.levels[l].transversal[p].clone().unwrap();
                for s in &gens {
                    let dest = s.apply(p);
                    let u_dest = self.levels[l].transversal[dest].clone().unwrap();
                    let schreier = u.then(s).then(&u_dest.inverse());
                    if schreier.is_identity() {
                        continue;
                    }
                    let (h, j) = self.strip(&schreier, l + 1);
                    if h.is_identity() {
                        continue;
                    }
                    if j == self.base.len() {
                        let b = (0..self.degree).find(|&q| h.apply(q) != q).unwrap();
                        self.push_level(b);
                    }
                    for m in (l + 1)..=j {
                        self.level_gens[m].push(h.clone());
                    }
                    for m in ((l + 1)..=j).rev() {
                        self.complete_level(m);
                    }
                    continue 'restart;
                }
            }
            return;
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn order(&self) -> BigUint {
        let mut out = BigUint::from(1u32);
        for lvl in &self.levels {
            out *= BigUint::from(lvl.orbit_len());
        }
        out
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (h, l) = self.strip(g, 0);
        l == self.levels.len() && h.is_identity()
    }

    /// Orbits of the natural action, each sorted, ordered by smallest
    /// element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for start in 0..self.degree {
            if seen[start] {
                continue;
            }
            let mut orbit = vec![start];
            seen[start] = true;
            let mut idx = 0;
            while idx < orbit.len() {
                let p = orbit[idx];
                idx += 1;
                for g in &self.generators {
                    let q = g.apply(p);
                    if !seen[q] {
                        seen[q] = true;
                        orbit.push(q);
                    }
                }
            }
            orbit.sort_unstable();
            out.push(orbit);
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.degree <= 1 || self.orbits().len() == 1
    }

    /// Transitivity on ordered tuples of `k` distinct points, `k <= 3`.
    pub fn is_k_transitive(&self, k: usize) -> bool {
        assert!((1..=3).contains(&k), "only k <= 3 supported");
        if self.degree < k {
            return false;
        }
        let start: Vec<usize> = (0..k).collect();
        let mut seen = std::collections::HashSet::new();
        seen.insert(start.clone());
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(tuple) = queue.pop_front() {
            for g in &self.generators {
                let image: Vec<usize> = tuple.iter().map(|&p| g.apply(p)).collect();
                if seen.insert(image.clone()) {
                    queue.push_back(image);
                }
            }
        }
        let mut target = 1usize;
        for i in 0..k {
            target *= self.degree - i;
        }
        seen.len() == target
    }

    /// Finest invariant partition merging the seed pair (block refinement
    /// under the generator action).
    pub fn minimal_block_system(&self, seed: (usize, usize)) -> BlockSystem {
        self.minimal_block_system_multi(&[seed])
    }

    /// Finest invariant partition merging every seed pair at once.
    pub fn minimal_block_system_multi(&self, seeds: &[(usize, usize)]) -> BlockSystem {
        let mut parent: Vec<usize> = (0..self.degree).collect();
        fn find(parent: &mut Vec<usize>, x: usize) -> usize {
            let mut root = x;
            while parent[root] != root {
                root = parent[root];
            }
            let mut p = x;
            while parent[p] != root {
                let next = parent[p];
                parent[p] = root;
                p = next;
            }
            root
        }
        let mut queue = Vec::new();
        for &(a, b) in seeds {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra] = rb;
                queue.push((a, b));
            }
        }
        while let Some((x, y)) = queue.pop() {
            for g in &self.generators {
                let gx = find(&mut parent, g.apply(x));
                let gy = find(&mut parent, g.apply(y));
                if gx != gy {
                    parent[gx] = gy;
                    queue.push((gx, gy));
                }
            }
        }
        let mut block_of = vec![usize::MAX; self.degree];
        let mut num_blocks = 0;
        for p in 0..self.degree {
            let r = find(&mut parent, p);
            if block_of[r] == usize::MAX {
                block_of[r] = num_blocks;
                num_blocks += 1;
            }
            block_of[p] = block_of[r];
        }
        BlockSystem {
            block_of,
            num_blocks,
        }
    }

    pub fn primitivity(&self) -> Primitivity {
        let orbits = self.orbits();
        if orbits.len() > 1 {
            return Primitivity::Intransitive(orbits);
        }
        for b in 1..self.degree {
            let bs = self.minimal_block_system((0, b));
            if bs.is_nontrivial() {
                return Primitivity::Imprimitive(bs);
            }
        }
        Primitivity::Primitive
    }

    pub fn is_primitive(&self) -> bool {
        self.primitivity() == Primitivity::Primitive
    }

    pub fn has_odd_element(&self) -> bool {
        // a group contains an odd element iff some generator is odd
        self.generators.iter().any(|g| g.parity() == -1)
    }

    /// Classify a primitive group of degree 24 by order.
    pub fn identify_primitive_deg24(&self) -> Result<Deg24Group, GroupError> {
        if self.degree != 24 {
            return Err(GroupError::NotInClassification(self.order().to_string()));
        }
        if !self.is_primitive() {
            return Err(GroupError::NotPrimitive);
        }
        let order = self.order();
        let full = factorial(24);
        let half = &full / BigUint::from(2u32);
        if order == BigUint::from(6072u32) {
            Ok(Deg24Group::Psl2_23)
        } else if order == BigUint::from(12144u32) {
            Ok(Deg24Group::Pgl2_23)
        } else if order == BigUint::from(244823040u64) {
            Ok(Deg24Group::M24)
        } else if order == half {
            Ok(Deg24Group::A24)
        } else if order == full {
            Ok(Deg24Group::S24)
        } else {
            Err(GroupError::NotInClassification(order.to_string()))
        }
    }

    /// Run the degree-24 classification argument: transitive, primitive,
    /// order above 12!, odd element present; conclusion `S24` iff all hold.
    pub fn certificate_report(&self) -> CertificateReport {
        let order = self.order();
        let transitive = self.is_transitive();
        let primitive = self.is_primitive();
        let order_exceeds = order > factorial(12);
        let has_odd = self.has_odd_element();
        let identification = if self.degree == 24 {
            self.identify_primitive_deg24()
                .ok()
                .map(|g| g.name().to_string())
        } else {
            None
        };
        let conclusion = if transitive
            && primitive
            && order_exceeds
            && has_odd
            && identification.as_deref() == Some("S24")
        {
            "S24".to_string()
        } else {
            "inconclusive".to_string()
        };
        CertificateReport {
            order: order.to_string(),
            transitive,
            primitive,
            order_exceeds_12_factorial: order_exceeds,
            has_odd,
            identification,
            conclusion,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn adjacent_transpositions(n: usize) -> Vec<Permutation> {
        (0..n - 1)
            .map(|i| Permutation::transposition(n, i, i + 1))
            .collect()
    }

    #[test]
    fn s24_order() {
        let g = PermGroup::generate(24, &adjacent_transpositions(24)).unwrap();
        assert_eq!(g.order().to_string(), "620448401733239439360000");
    }

    #[test]
    fn embedded_s12_order_and_orbits() {
        let gens: Vec<Permutation> = adjacent_transpositions(12)
            .iter()
            .map(embed_s12_diagonal)
            .collect();
        let g = PermGroup::generate(24, &gens).unwrap();
        assert_eq!(g.order(), factorial(12));
        assert!(!g.is_transitive());
        let orbits = g.orbits();
        assert_eq!(orbits.len(), 2);
        assert_eq!(orbits[0], (0..12).collect::<Vec<_>>());
        assert_eq!(orbits[1], (12..24).collect::<Vec<_>>());
    }

    #[test]
    fn embedded_s8_order_and_blocks() {
        let gens: Vec<Permutation> = adjacent_transpositions(8)
            .iter()
            .map(embed_s8_triple)
            .collect();
        let g = PermGroup::generate(24, &gens).unwrap();
        assert_eq!(g.order(), factorial(8));
        assert_eq!(g.orbits().len(), 3);
        // with one seed, pair refinement stops at 8 pairs plus 8 singletons
        let pairs = g.minimal_block_system((0, 8));
        assert_eq!(pairs.num_blocks, 16);
        // the 8 triples {i, i+8, i+16} are the finest class merging both pairs
        let triples = g.minimal_block_system_multi(&[(0, 8), (0, 16)]);
        assert!(triples.is_uniform());
        assert_eq!(triples.num_blocks, 8);
        for i in 0..8 {
            assert_eq!(triples.block_of[i], triples.block_of[i + 8]);
            assert_eq!(triples.block_of[i], triples.block_of[i + 16]);
        }
    }

    #[test]
    fn im_f_with_half_swap_block_systems() {
        // Im(f) extended by the swap i <-> i+12: both candidate partitions
        // from the primitivity argument show up as invariant systems.
        let mut gens: Vec<Permutation> = adjacent_transpositions(12)
            .iter()
            .map(embed_s12_diagonal)
            .collect();
        let mut sw = vec![0usize; 24];
        for i in 0..12 {
            sw[i] = i + 12;
            sw[i + 12] = i;
        }
        gens.push(Permutation::from_images(sw).unwrap());
        let g = PermGroup::generate(24, &gens).unwrap();
        assert!(g.is_transitive());
        let pairs = g.minimal_block_system((0, 12));
        assert!(pairs.is_nontrivial());
        assert_eq!(pairs.num_blocks, 12);
        let halves = g.minimal_block_system((0, 1));
        assert!(halves.is_nontrivial());
        assert_eq!(halves.num_blocks, 2);
        assert!(!g.is_primitive());
    }

    #[test]
    fn s24_is_two_transitive_and_primitive() {
        let g = PermGroup::generate(24, &adjacent_transpositions(24)).unwrap();
        assert!(g.is_transitive());
        assert!(g.is_k_transitive(2));
        assert!(g.is_primitive());
        assert_eq!(g.identify_primitive_deg24().unwrap(), Deg24Group::S24);
    }

    #[test]
    fn parity_examples() {
        assert_eq!(Permutation::identity(24).parity(), 1);
        let double = Permutation::from_cycles(24, &[vec![0, 1], vec![2, 3]]).unwrap();
        assert_eq!(double.parity(), 1);
        let triple = Permutation::from_cycles(24, &[vec![0, 1], vec![2, 3], vec![4, 5]]).unwrap();
        assert_eq!(triple.parity(), -1);
        assert_eq!(triple.nontrivial_cycle_type(), vec![2, 2, 2]);
    }

    #[test]
    fn a24_generators_fail_odd_test() {
        // 3-cycles generate A24
        let gens: Vec<Permutation> = (0..22)
            .map(|i| Permutation::from_cycles(24, &[vec![i, i + 1, i + 2]]).unwrap())
            .collect();
        let g = PermGroup::generate(24, &gens).unwrap();
        assert_eq!(g.order(), factorial(24) / BigUint::from(2u32));
        assert!(!g.has_odd_element());
        assert_eq!(g.identify_primitive_deg24().unwrap(), Deg24Group::A24);
        let report = g.certificate_report();
        assert_eq!(report.conclusion, "inconclusive");
    }

    #[test]
    fn im_f_alone_fails_transitivity() {
        let gens: Vec<Permutation> = adjacent_transpositions(12)
            .iter()
            .map(embed_s12_diagonal)
            .collect();
        let g = PermGroup::generate(24, &gens).unwrap();
        let report = g.certificate_report();
        assert!(!report.transitive);
        assert_eq!(report.conclusion, "inconclusive");
    }

    #[test]
    fn interleaved_f_and_g_generate_s24() {
        let mut gens: Vec<Permutation> = adjacent_transpositions(12)
            .iter()
            .map(embed_s12_diagonal)
            .collect();
        gens.extend(adjacent_transpositions(8).iter().map(embed_s8_triple));
        let g = PermGroup::generate(24, &gens).unwrap();
        assert_eq!(g.order(), factorial(24));
        let report = g.certificate_report();
        assert_eq!(report.conclusion, "S24");
    }

    #[test]
    fn membership_and_non_membership() {
        let gens: Vec<Permutation> = adjacent_transpositions(8)
            .iter()
            .map(embed_s8_triple)
            .collect();
        let g = PermGroup::generate(24, &gens).unwrap();
        // a random word in the generators is a member
        let w = gens[0].then(&gens[3]).then(&gens[1]).then(&gens[3]);
        assert!(g.contains(&w));
        // a bare transposition breaks the triple structure
        assert!(!g.contains(&Permutation::transposition(24, 0, 1)));
    }

    #[test]
    fn trivial_group() {
        let g = PermGroup::generate(24, &[]).unwrap();
        assert_eq!(g.order(), BigUint::from(1u32));
        assert!(g.contains(&Permutation::identity(24)));
        assert!(!g.contains(&Permutation::transposition(24, 0, 1)));
    }

    #[test]
    fn induced_action_on_triples() {
        let gens: Vec<Permutation> = adjacent_transpositions(8)
            .iter()
            .map(embed_s8_triple)
            .collect();
        let g = PermGroup::generate(24, &gens).unwrap();
        let bs = g.minimal_block_system_multi(&[(0, 8), (0, 16)]);
        let induced = induced_block_action(&gens, &bs).unwrap();
        let h = PermGroup::generate(8, &induced).unwrap();
        assert_eq!(h.order(), factorial(8));
    }

    proptest! {
        #[test]
        fn parity_is_a_homomorphism(
            a in proptest::collection::vec(0usize..1000, 10),
            b in proptest::collection::vec(0usize..1000, 10),
        ) {
            // build two permutations of degree 10 from random priorities
            let mk = |v: &[usize]| {
                let mut idx: Vec<usize> = (0..v.len()).collect();
                idx.sort_by_key(|&i| (v[i], i));
                Permutation::from_images(idx).unwrap()
            };
            let (p, q) = (mk(&a), mk(&b));
            prop_assert_eq!(p.then(&q).parity(), p.parity() * q.parity());
        }

        #[test]
        fn inverse_roundtrip(v in proptest::collection::vec(0usize..1000, 12)) {
            let mut idx: Vec<usize> = (0..v.len()).collect();
            idx.sort_by_key(|&i| (v[i], i));
            let p = Permutation::from_images(idx).unwrap();
            prop_assert!(p.then(&p.inverse()).is_identity());
        }
    }
}
