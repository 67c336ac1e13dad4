//! Objective evaluation, descent over the graph, and extraction of the
//! equitable allocation from the optimal face.

use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::geometry::{rd_map, SimplexPoint};
use crate::graph::{
    build_graph, composite_totals, composites_from_disputes, par_allocation, Composite, RnsGraph,
};
use crate::model::{allocation_value, AllocationMatrix, Instance, Player};

/// Support value of the hyperplane with coefficients `gamma`: the best
/// weighted welfare any allocation can reach, Σ_j max_i γ_i a_{ij}.
pub fn g_value(inst: &Instance, gamma: &SimplexPoint) -> BigRational {
    let mut total = BigRational::zero();
    for j in 0..inst.item_count() {
        let col = inst.column(j);
        let best = Player::ALL
            .iter()
            .map(|p| gamma.coord(*p) * col[p.index()])
            .max()
            .expect("three players");
        total += best;
    }
    total
}

/// The objective pulled back to the simplex: g̃(β) = g(RD(β)).
pub fn g_tilde(inst: &Instance, beta: &SimplexPoint) -> Result<BigRational> {
    Ok(g_value(inst, &rd_map(beta)?))
}

/// Instantaneous rate of change of the hyperplane coefficients when the
/// simplex point moves toward `toward` along its supporting line:
/// δ'(0) = c_a c_b / ((c_a + c_b)(c_a c_b + c_t(c_a + c_b))²)
/// with (a, b) the other two players.
pub fn delta_prime(c: &SimplexPoint, toward: Player) -> Result<BigRational> {
    if !c.is_interior() {
        return Err(Error::BoundaryPoint);
    }
    let [pa, pb] = toward.others();
    let ca = c.coord(pa);
    let cb = c.coord(pb);
    let ct = c.coord(toward);
    let sum_ab = ca + cb;
    let d = ca * cb + ct * &sum_ab;
    Ok((ca * cb) / (&sum_ab * (&d * &d)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShiftSense {
    Toward,
    Away,
}

/// First-order variation of the hyperplane coefficients for a move along a
/// supporting line; components sum to zero exactly.
#[derive(Debug, Clone)]
pub struct ShiftVector {
    pub components: [BigRational; 3],
    pub sense: ShiftSense,
    pub corner: Player,
}

impl ShiftVector {
    pub fn reversed(&self) -> ShiftVector {
        ShiftVector {
            components: [
                -self.components[0].clone(),
                -self.components[1].clone(),
                -self.components[2].clone(),
            ],
            sense: match self.sense {
                ShiftSense::Toward => ShiftSense::Away,
                ShiftSense::Away => ShiftSense::Toward,
            },
            corner: self.corner,
        }
    }
}

/// Derivative of RD along the move from `c` toward the corner of `toward`:
/// δ'(0)·(−(c_a+c_b), c_b, c_a) laid out on (toward, a, b). Moving toward a
/// player's corner lowers that player's coefficient and raises the others'.
pub fn shift_direction(c: &SimplexPoint, toward: Player) -> Result<ShiftVector> {
    let scale = delta_prime(c, toward)?;
    let [pa, pb] = toward.others();
    let ca = c.coord(pa);
    let cb = c.coord(pb);
    let mut components = [BigRational::zero(), BigRational::zero(), BigRational::zero()];
    components[toward.index()] = -(ca + cb) * &scale;
    components[pa.index()] = cb * &scale;
    components[pb.index()] = ca * &scale;
    Ok(ShiftVector { components, sense: ShiftSense::Toward, corner: toward })
}

/// One-sided derivative of g̃ at `location` under the coefficient shift `s`:
/// Δg̃ = Σ_i s_i a_i(fixed) + Σ_{disputed j} max over the disputants of s_i a_{ij}.
pub fn directional_derivative(
    inst: &Instance,
    location: &SimplexPoint,
    s: &ShiftVector,
) -> Result<BigRational> {
    let par = par_allocation(inst, location)?;
    let mut delta = BigRational::zero();
    for p in Player::ALL {
        let fixed = par.fixed_value.get(p);
        if !fixed.is_zero() {
            delta += &s.components[p.index()] * fixed;
        }
    }
    for dispute in &par.disputes {
        let best = dispute
            .disputants
            .iter()
            .map(|p| &s.components[p.index()] * inst.value(*p, dispute.item))
            .max()
            .expect("at least two disputants");
        delta += best;
    }
    Ok(delta)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    Simple,
    Steepest,
}

impl Algorithm {
    pub fn label(self) -> &'static str {
        match self {
            Algorithm::Simple => "simple",
            Algorithm::Steepest => "steepest",
        }
    }
}

impl std::fmt::Display for Algorithm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

/// Fractional division of one item among several players.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ItemSplit {
    pub item: usize,
    pub shares: Vec<(Player, BigRational)>,
}

/// The three shapes the split bound allows.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SplitPattern {
    NoSplit,
    OneItemUpTo3Players,
    TwoItemsTwoPlayersEach,
}

impl SplitPattern {
    pub fn label(self) -> &'static str {
        match self {
            SplitPattern::NoSplit => "no_split",
            SplitPattern::OneItemUpTo3Players => "one_item_up_to_3_players",
            SplitPattern::TwoItemsTwoPlayersEach => "two_items_two_players_each",
        }
    }
}

/// Equal-value allocation found on a face.
#[derive(Debug, Clone)]
pub struct EquitableSolution {
    pub allocation: AllocationMatrix,
    pub split_count: usize,
    pub split_pattern: SplitPattern,
}

/// Full account of one solver run.
#[derive(Debug, Clone)]
pub struct SolveReport {
    pub algorithm: Algorithm,
    /// Vertices visited, start first.
    pub path: Vec<usize>,
    pub optimal_vertex: usize,
    pub gamma_star: SimplexPoint,
    /// The common equitable value.
    pub value: BigRational,
    pub allocation: AllocationMatrix,
    pub splits: Vec<ItemSplit>,
    pub split_pattern: SplitPattern,
    /// Number of vertices visited, including the start.
    pub iterations: usize,
}

struct GtildeMemo<'a> {
    inst: &'a Instance,
    graph: &'a RnsGraph,
    values: HashMap<usize, BigRational>,
}

impl<'a> GtildeMemo<'a> {
    fn new(inst: &'a Instance, graph: &'a RnsGraph) -> Self {
        GtildeMemo { inst, graph, values: HashMap::new() }
    }

    fn value(&mut self, v: usize) -> BigRational {
        if let Some(cached) = self.values.get(&v) {
            return cached.clone();
        }
        let val = g_tilde(self.inst, &self.graph.vertices[v].location)
            .expect("vertex locations are interior");
        self.values.insert(v, val.clone());
        val
    }

    fn is_local_min(&mut self, v: usize) -> bool {
        let own = self.value(v);
        let neighbors: Vec<usize> = self.graph.neighbors(v).iter().map(|&(n, _)| n).collect();
        neighbors.into_iter().all(|n| self.value(n) >= own)
    }
}

fn start_vertex(graph: &RnsGraph, start: Option<usize>) -> Result<usize> {
    if graph.vertex_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    Ok(match start {
        Some(v) => v,
        None => graph.center_most_vertex().expect("nonempty graph"),
    })
}

/// Walks to the neighbor with the lowest g̃ while that strictly improves;
/// stops at a vertex no neighbor beats.
pub fn simple_descent(
    inst: &Instance,
    graph: &RnsGraph,
    start: Option<usize>,
) -> Result<SolveReport> {
    let mut memo = GtildeMemo::new(inst, graph);
    let mut current = start_vertex(graph, start)?;
    let mut path = vec![current];
    loop {
        let here = memo.value(current);
        let mut best: Option<(BigRational, usize)> = None;
        for &(n, _) in graph.neighbors(current) {
            let val = memo.value(n);
            if val < here && best.as_ref().is_none_or(|(b, _)| val < *b) {
                best = Some((val, n));
            }
        }
        match best {
            Some((_, next)) => {
                current = next;
                path.push(current);
            }
            None => break,
        }
    }
    finish_report(inst, graph, Algorithm::Simple, path)
}

/// Walks along the most negative one-sided derivative; stops when every
/// outgoing derivative is nonnegative.
pub fn steepest_descent(
    inst: &Instance,
    graph: &RnsGraph,
    start: Option<usize>,
) -> Result<SolveReport> {
    let mut current = start_vertex(graph, start)?;
    let mut path = vec![current];
    loop {
        let location = &graph.vertices[current].location;
        let mut best: Option<(BigRational, usize)> = None;
        for &(n, arc_idx) in graph.neighbors(current) {
            let carrier = &graph.arcs[arc_idx].carrier;
            let t_here = carrier.param_of(location).expect("vertex on carrier");
            let t_there = carrier
                .param_of(&graph.vertices[n].location)
                .expect("neighbor on carrier");
            let shift = shift_direction(location, carrier.toward)?;
            let shift = if t_there > t_here { shift } else { shift.reversed() };
            let d = directional_derivative(inst, location, &shift)?;
            if d.is_negative() && best.as_ref().is_none_or(|(b, _)| d < *b) {
                best = Some((d, n));
            }
        }
        match best {
            Some((_, next)) => {
                current = next;
                path.push(current);
            }
            None => break,
        }
    }
    // The derivative stop rule must land on a g̃ local minimum as well.
    let mut memo = GtildeMemo::new(inst, graph);
    assert!(
        memo.is_local_min(current),
        "steepest descent terminal fails the local-minimum test"
    );
    finish_report(inst, graph, Algorithm::Steepest, path)
}

fn finish_report(
    inst: &Instance,
    graph: &RnsGraph,
    algorithm: Algorithm,
    path: Vec<usize>,
) -> Result<SolveReport> {
    let optimal_vertex = *path.last().expect("nonempty path");
    let vertex = &graph.vertices[optimal_vertex];
    let gamma_star = rd_map(&vertex.location)?;
    let solution = extract_equitable(inst, vertex)?;
    let totals = allocation_value(inst, &solution.allocation)?;
    debug_assert!(totals.is_equitable());
    let value = totals.0[0].clone();
    debug_assert_eq!(value, g_value(inst, &gamma_star));
    let splits = collect_splits(&solution.allocation);
    let iterations = path.len();
    Ok(SolveReport {
        algorithm,
        path,
        optimal_vertex,
        gamma_star,
        value,
        allocation: solution.allocation,
        splits,
        split_pattern: solution.split_pattern,
        iterations,
    })
}

fn collect_splits(alloc: &AllocationMatrix) -> Vec<ItemSplit> {
    let mut splits = Vec::new();
    for j in 0..alloc.item_count() {
        let shares: Vec<(Player, BigRational)> = Player::ALL
            .into_iter()
            .filter_map(|p| {
                let x = alloc.share(p, j);
                (!x.is_zero()).then(|| (p, x.clone()))
            })
            .collect();
        if shares.len() >= 2 {
            splits.push(ItemSplit { item: j, shares });
        }
    }
    splits
}

/// Builds the graph, runs the chosen descent from the center-most vertex and
/// extracts the equitable allocation.
pub fn solve(inst: &Instance, algorithm: Algorithm) -> Result<SolveReport> {
    let graph = build_graph(inst);
    match algorithm {
        Algorithm::Simple => simple_descent(inst, &graph, None),
        Algorithm::Steepest => steepest_descent(inst, &graph, None),
    }
}

// ---------------------------------------------------------------------------
// Equitable extraction
// ---------------------------------------------------------------------------

/// How one composite is distributed in a candidate facet.
#[derive(Debug, Clone)]
enum ChoiceState {
    /// Everything to this disputant (index into the composite's list).
    Pinned(usize),
    /// Split between two disputants; the unknown is the first one's share.
    FreePair(usize, usize),
    /// Three-way split of the at-point composite; unknowns are the first two
    /// disputants' shares.
    FreeTriple,
}

/// Affine form base + Σ coef_k x_k in at most two unknowns.
#[derive(Debug, Clone)]
struct Affine {
    base: BigRational,
    coef: [BigRational; 2],
}

impl Affine {
    fn zero() -> Affine {
        Affine { base: BigRational::zero(), coef: [BigRational::zero(), BigRational::zero()] }
    }
}

/// Finds an exactly equal-value allocation supported by the face at `vertex`.
///
/// Unknowns are the disputed composite shares. Candidate facets of the share
/// region are enumerated by ascending dimension (all pinned; one two-way
/// split; the three-way split; two two-way splits), lexicographically within
/// each stage, and the first exactly feasible solution is returned. Composites
/// re-expand greedily in item-index order, fracturing at most one underlying
/// item per two-way split.
pub fn extract_equitable(inst: &Instance, vertex: &crate::graph::FaceVertex) -> Result<EquitableSolution> {
    let par = par_allocation(inst, &vertex.location)?;
    let composites = composites_from_disputes(&par.disputes);
    let totals: Vec<[BigRational; 3]> =
        composites.iter().map(|c| composite_totals(inst, c)).collect();

    let solver = FacetSolver { inst, par: &par, composites: &composites, totals: &totals };

    // Fast path: with at most two degrees of freedom overall, the fully free
    // system is square; a unique in-region solution settles it.
    let dof: usize = composites.iter().map(|c| c.disputants.len() - 1).sum();
    if dof <= 2 {
        let states: Vec<ChoiceState> = composites
            .iter()
            .map(|c| {
                if c.disputants.len() == 2 {
                    ChoiceState::FreePair(0, 1)
                } else {
                    ChoiceState::FreeTriple
                }
            })
            .collect();
        if let Some(solution) = solver.try_facet(&states) {
            return solver.expand(&solution, &states);
        }
    }

    // Stage 0: every composite pinned.
    let mut found = None;
    solver.for_each_pinned(&composites.iter().map(|_| None).collect::<Vec<_>>(), &mut |states| {
        if found.is_none() {
            if let Some(sol) = solver.try_facet(states) {
                found = Some((sol, states.to_vec()));
            }
        }
    });

    // Stage 1: one composite split two ways.
    if found.is_none() {
        'outer1: for (ci, c) in composites.iter().enumerate() {
            for (da, db) in two_way_choices(c) {
                let mut template: Vec<Option<ChoiceState>> =
                    composites.iter().map(|_| None).collect();
                template[ci] = Some(ChoiceState::FreePair(da, db));
                let mut hit = None;
                solver.for_each_pinned(&template, &mut |states| {
                    if hit.is_none() {
                        if let Some(sol) = solver.try_facet(states) {
                            hit = Some((sol, states.to_vec()));
                        }
                    }
                });
                if hit.is_some() {
                    found = hit;
                    break 'outer1;
                }
            }
        }
    }

    // Stage 2a: the at-point composite split three ways.
    if found.is_none() {
        if let Some(ci) = composites.iter().position(|c| c.disputants.len() == 3) {
            let mut template: Vec<Option<ChoiceState>> = composites.iter().map(|_| None).collect();
            template[ci] = Some(ChoiceState::FreeTriple);
            let mut hit = None;
            solver.for_each_pinned(&template, &mut |states| {
                if hit.is_none() {
                    if let Some(sol) = solver.try_facet(states) {
                        hit = Some((sol, states.to_vec()));
                    }
                }
            });
            found = hit;
        }
    }

    // Stage 2b: two composites split two ways each.
    if found.is_none() {
        'outer2: for ci in 0..composites.len() {
            for cj in (ci + 1)..composites.len() {
                for (da, db) in two_way_choices(&composites[ci]) {
                    for (ea, eb) in two_way_choices(&composites[cj]) {
                        let mut template: Vec<Option<ChoiceState>> =
                            composites.iter().map(|_| None).collect();
                        template[ci] = Some(ChoiceState::FreePair(da, db));
                        template[cj] = Some(ChoiceState::FreePair(ea, eb));
                        let mut hit = None;
                        solver.for_each_pinned(&template, &mut |states| {
                            if hit.is_none() {
                                if let Some(sol) = solver.try_facet(states) {
                                    hit = Some((sol, states.to_vec()));
                                }
                            }
                        });
                        if hit.is_some() {
                            found = hit;
                            break 'outer2;
                        }
                    }
                }
            }
        }
    }

    match found {
        Some((solution, states)) => solver.expand(&solution, &states),
        None => Err(Error::NoEquitablePointOnFace),
    }
}

/// Two-way split options of a composite, lexicographic by disputant index.
fn two_way_choices(c: &Composite) -> Vec<(usize, usize)> {
    match c.disputants.len() {
        2 => vec![(0, 1)],
        3 => vec![(0, 1), (0, 2), (1, 2)],
        _ => unreachable!("disputes have two or three players"),
    }
}

struct FacetSolver<'a> {
    inst: &'a Instance,
    par: &'a crate::graph::ParResult,
    composites: &'a [Composite],
    totals: &'a [[BigRational; 3]],
}

impl FacetSolver<'_> {
    /// Runs `visit` over every completion of `template` that pins the
    /// unspecified composites, in lexicographic disputant order.
    fn for_each_pinned(
        &self,
        template: &[Option<ChoiceState>],
        visit: &mut dyn FnMut(&[ChoiceState]),
    ) {
        let open: Vec<usize> =
            (0..template.len()).filter(|&i| template[i].is_none()).collect();
        let mut choice = vec![0usize; open.len()];
        loop {
            let states: Vec<ChoiceState> = template
                .iter()
                .enumerate()
                .map(|(i, slot)| match slot {
                    Some(s) => s.clone(),
                    None => {
                        let k = open.iter().position(|&o| o == i).expect("open slot");
                        ChoiceState::Pinned(choice[k])
                    }
                })
                .collect();
            visit(&states);
            let mut pos = open.len();
            loop {
                if pos == 0 {
                    return;
                }
                pos -= 1;
                choice[pos] += 1;
                if choice[pos] < self.composites[open[pos]].disputants.len() {
                    break;
                }
                choice[pos] = 0;
            }
        }
    }

    /// Solves the two equal-value equations on the facet described by
    /// `states`; returns per-composite share vectors if exactly feasible.
    fn try_facet(&self, states: &[ChoiceState]) -> Option<Vec<Vec<BigRational>>> {
        let mut forms = [Affine::zero(), Affine::zero(), Affine::zero()];
        for p in Player::ALL {
            forms[p.index()].base = self.par.fixed_value.get(p).clone();
        }
        let mut unknowns = 0usize;
        for (ci, state) in states.iter().enumerate() {
            let c = &self.composites[ci];
            let t = &self.totals[ci];
            match state {
                ChoiceState::Pinned(di) => {
                    let p = c.disputants[*di];
                    forms[p.index()].base += &t[p.index()];
                }
                ChoiceState::FreePair(da, db) => {
                    let k = unknowns;
                    unknowns += 1;
                    let pa = c.disputants[*da];
                    let pb = c.disputants[*db];
                    // pa gets u·T_a, pb gets (1-u)·T_b.
                    forms[pa.index()].coef[k] += &t[pa.index()];
                    forms[pb.index()].base += &t[pb.index()];
                    forms[pb.index()].coef[k] -= &t[pb.index()];
                }
                ChoiceState::FreeTriple => {
                    debug_assert_eq!(unknowns, 0, "triple split uses both unknowns");
                    unknowns = 2;
                    let [p0, p1, p2] =
                        [c.disputants[0], c.disputants[1], c.disputants[2]];
                    forms[p0.index()].coef[0] += &t[p0.index()];
                    forms[p1.index()].coef[1] += &t[p1.index()];
                    forms[p2.index()].base += &t[p2.index()];
                    forms[p2.index()].coef[0] -= &t[p2.index()];
                    forms[p2.index()].coef[1] -= &t[p2.index()];
                }
            }
        }

        let eq = |a: &Affine, b: &Affine| Affine {
            base: &a.base - &b.base,
            coef: [&a.coef[0] - &b.coef[0], &a.coef[1] - &b.coef[1]],
        };
        let e1 = eq(&forms[0], &forms[1]);
        let e2 = eq(&forms[1], &forms[2]);
        let x = solve_equations(&e1, &e2, unknowns)?;

        // Region check plus share reconstruction.
        let zero = BigRational::zero();
        let one = BigRational::one();
        let mut shares = Vec::with_capacity(states.len());
        let mut next = 0usize;
        for (ci, state) in states.iter().enumerate() {
            let c = &self.composites[ci];
            let mut s = vec![zero.clone(); c.disputants.len()];
            match state {
                ChoiceState::Pinned(di) => s[*di] = one.clone(),
                ChoiceState::FreePair(da, db) => {
                    let u = x[next].clone();
                    next += 1;
                    if u < zero || u > one {
                        return None;
                    }
                    s[*db] = &one - &u;
                    s[*da] = u;
                }
                ChoiceState::FreeTriple => {
                    let (t0, t1) = (x[0].clone(), x[1].clone());
                    let t2 = &one - &t0 - &t1;
                    if t0 < zero || t1 < zero || t2 < zero {
                        return None;
                    }
                    s = vec![t0, t1, t2];
                    next = 2;
                }
            }
            shares.push(s);
        }
        Some(shares)
    }

    /// Expands composite share vectors into a full allocation matrix.
    fn expand(
        &self,
        shares: &[Vec<BigRational>],
        states: &[ChoiceState],
    ) -> Result<EquitableSolution> {
        let m = self.inst.item_count();
        let mut alloc = AllocationMatrix::zeros(m);
        for (j, owner) in self.par.fixed_owner.iter().enumerate() {
            if let Some(p) = owner {
                alloc[p.index()][j] = BigRational::one();
            }
        }
        for ci in 0..self.composites.len() {
            match &states[ci] {
                ChoiceState::FreeTriple => {
                    self.spread_by_mass(ci, &shares[ci], &mut alloc);
                }
                // A two-way greedy sweep covers pinned states too (share 0 or 1).
                ChoiceState::Pinned(di) => {
                    let other = if *di == 0 { 1 } else { 0 };
                    self.spread_pair(ci, *di, other, &shares[ci][*di], &mut alloc);
                }
                ChoiceState::FreePair(da, db) => {
                    self.spread_pair(ci, *da, *db, &shares[ci][*da], &mut alloc);
                }
            }
        }
        let allocation = AllocationMatrix::new(alloc)?;
        let totals = allocation_value(self.inst, &allocation)?;
        if !totals.is_equitable() {
            return Err(Error::NoEquitablePointOnFace);
        }
        let (split_count, split_pattern) = split_pattern_of(&allocation);
        Ok(EquitableSolution { allocation, split_count, split_pattern })
    }

    /// Gives disputant `da` a `u` fraction of the composite's value, sweeping
    /// items in index order and fracturing at most one.
    fn spread_pair(
        &self,
        ci: usize,
        da: usize,
        db: usize,
        u: &BigRational,
        alloc: &mut [Vec<BigRational>; 3],
    ) {
        let c = &self.composites[ci];
        let pa = c.disputants[da];
        let pb = c.disputants[db];
        let target = u * &self.totals[ci][pa.index()];
        let mut cum = BigRational::zero();
        let mut exhausted = target.is_zero();
        for &j in &c.items {
            if exhausted {
                alloc[pb.index()][j] = BigRational::one();
                continue;
            }
            let a = self.inst.value(pa, j).clone();
            if &cum + &a <= target {
                alloc[pa.index()][j] = BigRational::one();
                cum += a;
                exhausted = cum == target;
            } else {
                let f = (&target - &cum) / &a;
                alloc[pa.index()][j] = f.clone();
                alloc[pb.index()][j] = BigRational::one() - f;
                exhausted = true;
            }
        }
    }

    /// Three-way split of the at-point composite: all its items share one
    /// simplex point, so value splits proportionally to column mass and a
    /// single sweep fractures at most two items.
    fn spread_by_mass(&self, ci: usize, shares: &[BigRational], alloc: &mut [Vec<BigRational>; 3]) {
        let c = &self.composites[ci];
        let masses: Vec<BigRational> = c
            .items
            .iter()
            .map(|&j| {
                let col = self.inst.column(j);
                col[0] + col[1] + col[2]
            })
            .collect();
        let total: BigRational = masses.iter().sum();
        let mut remaining: Vec<BigRational> =
            shares.iter().map(|s| s * &total).collect();
        let mut who = 0usize;
        for (idx, &j) in c.items.iter().enumerate() {
            let mut left = masses[idx].clone();
            while left.is_positive() {
                while who < 2 && remaining[who].is_zero() {
                    who += 1;
                }
                let take = if who == 2 { left.clone() } else { remaining[who].clone().min(left.clone()) };
                if take.is_positive() {
                    alloc[c.disputants[who].index()][j] += &take / &masses[idx];
                    if who < 2 {
                        remaining[who] -= &take;
                    }
                }
                left -= take;
            }
        }
    }

}

/// Solves e1 = 0, e2 = 0 over `unknowns` variables; `None` when inconsistent
/// or when a 2×2 system is singular (lower-dimensional facets cover that).
fn solve_equations(e1: &Affine, e2: &Affine, unknowns: usize) -> Option<Vec<BigRational>> {
    let zero = BigRational::zero();
    match unknowns {
        0 => (e1.base.is_zero() && e2.base.is_zero()).then(Vec::new),
        1 => {
            let solve_one = |e: &Affine| -> Option<Option<BigRational>> {
                if e.coef[0].is_zero() {
                    if e.base.is_zero() {
                        Some(None) // any value works
                    } else {
                        None
                    }
                } else {
                    Some(Some(-&e.base / &e.coef[0]))
                }
            };
            let r1 = solve_one(e1)?;
            let r2 = solve_one(e2)?;
            let x = match (r1, r2) {
                (Some(a), Some(b)) => (a == b).then_some(a)?,
                (Some(a), None) | (None, Some(a)) => a,
                (None, None) => zero,
            };
            Some(vec![x])
        }
        2 => {
            let det = &e1.coef[0] * &e2.coef[1] - &e1.coef[1] * &e2.coef[0];
            if det.is_zero() {
                return None;
            }
            let b1 = -&e1.base;
            let b2 = -&e2.base;
            let x0 = (&b1 * &e2.coef[1] - &e1.coef[1] * &b2) / &det;
            let x1 = (&e1.coef[0] * &b2 - &b1 * &e2.coef[0]) / &det;
            Some(vec![x0, x1])
        }
        _ => unreachable!("facets have at most two unknowns"),
    }
}

fn split_pattern_of(alloc: &AllocationMatrix) -> (usize, SplitPattern) {
    let mut fractured: Vec<usize> = Vec::new();
    for j in 0..alloc.item_count() {
        let owners = Player::ALL
            .iter()
            .filter(|p| !alloc.share(**p, j).is_zero())
            .count();
        if owners >= 2 {
            fractured.push(j);
        }
    }
    let pattern = match fractured.len() {
        0 => SplitPattern::NoSplit,
        1 => SplitPattern::OneItemUpTo3Players,
        2 => {
            for &j in &fractured {
                let owners = Player::ALL
                    .iter()
                    .filter(|p| !alloc.share(**p, j).is_zero())
                    .count();
                assert_eq!(owners, 2, "two split items must each involve two players");
            }
            SplitPattern::TwoItemsTwoPlayersEach
        }
        n => panic!("split bound violated: {n} fractured items"),
    };
    (fractured.len(), pattern)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::geometry::item_point;
    use crate::rational::rat;

    fn pt(a: BigRational, b: BigRational, c: BigRational) -> SimplexPoint {
        SimplexPoint::new([a, b, c]).unwrap()
    }

    #[test]
    fn g_examples() {
        let e1 = fixtures::e1();
        let corner = SimplexPoint::corner(Player::I);
        assert_eq!(g_value(&e1, &corner), rat(1, 1));
        assert_eq!(g_value(&e1, &SimplexPoint::center()), rat(4, 5));

        let e5 = fixtures::e5();
        let gamma = pt(rat(30, 107), rat(35, 107), rat(42, 107));
        assert_eq!(g_value(&e5, &gamma), rat(42, 107));
    }

    #[test]
    fn g_tilde_examples() {
        let e5 = fixtures::e5();
        let q = pt(rat(7, 18), rat(6, 18), rat(5, 18));
        assert_eq!(g_tilde(&e5, &q).unwrap(), rat(42, 107));
        assert_eq!(g_tilde(&e5, &item_point(&e5, 0)).unwrap(), rat(35, 83));
        assert_eq!(g_tilde(&e5, &item_point(&e5, 1)).unwrap(), rat(10, 21));

        let e1 = fixtures::e1();
        let g = build_graph(&e1);
        for v in &g.vertices {
            assert_eq!(g_tilde(&e1, &v.location).unwrap(), rat(4, 5));
        }
    }

    #[test]
    fn delta_prime_examples() {
        assert_eq!(delta_prime(&SimplexPoint::center(), Player::I).unwrap(), rat(3, 2));
        let c = pt(rat(1, 2), rat(1, 3), rat(1, 6));
        assert_eq!(delta_prime(&c, Player::I).unwrap(), rat(144, 121));
        // Role exchange: toward II at (c1,c2,c3) equals toward I at (c2,c1,c3).
        let swapped = pt(rat(1, 3), rat(1, 2), rat(1, 6));
        assert_eq!(
            delta_prime(&c, Player::II).unwrap(),
            delta_prime(&swapped, Player::I).unwrap()
        );
    }

    #[test]
    fn shift_direction_examples() {
        let s = shift_direction(&SimplexPoint::center(), Player::I).unwrap();
        assert_eq!(s.components, [rat(-1, 1), rat(1, 2), rat(1, 2)]);

        let c = pt(rat(1, 2), rat(1, 3), rat(1, 6));
        let s = shift_direction(&c, Player::I).unwrap();
        let scale = rat(144, 121);
        assert_eq!(
            s.components,
            [&scale * rat(-1, 2), &scale * rat(1, 6), &scale * rat(1, 3)]
        );
        for toward in Player::ALL {
            let s = shift_direction(&c, toward).unwrap();
            let sum: BigRational = s.components.iter().sum();
            assert!(sum.is_zero());
        }
    }

    #[test]
    fn derivative_signs_on_e5() {
        let e5 = fixtures::e5();
        let q = pt(rat(7, 18), rat(6, 18), rat(5, 18));
        // Toward item 1 means away from corner II.
        let away_ii = shift_direction(&q, Player::II).unwrap().reversed();
        assert!(directional_derivative(&e5, &q, &away_ii).unwrap().is_positive());
        // Toward item 2 means away from corner I.
        let away_i = shift_direction(&q, Player::I).unwrap().reversed();
        assert!(directional_derivative(&e5, &q, &away_i).unwrap().is_positive());
        // From the item-2 point toward q means toward corner I.
        let p2 = item_point(&e5, 1);
        let toward_i = shift_direction(&p2, Player::I).unwrap();
        assert!(directional_derivative(&e5, &p2, &toward_i).unwrap().is_negative());
    }

    #[test]
    fn simple_descent_on_e5() {
        let e5 = fixtures::e5();
        let g = build_graph(&e5);
        let q = g.vertex_at(&pt(rat(7, 18), rat(6, 18), rat(5, 18))).unwrap();
        let from_p2 = simple_descent(&e5, &g, Some(1)).unwrap();
        assert_eq!(from_p2.path, vec![1, q]);
        assert_eq!(from_p2.value, rat(42, 107));
        assert_eq!(from_p2.iterations, 2);
        let from_p1 = simple_descent(&e5, &g, Some(0)).unwrap();
        assert_eq!(from_p1.path, vec![0, q]);
        // The default start is the vertex closest to the center, which is q.
        let default = simple_descent(&e5, &g, None).unwrap();
        assert_eq!(default.path, vec![q]);
    }

    #[test]
    fn simple_descent_on_e1_stops_immediately() {
        let e1 = fixtures::e1();
        let g = build_graph(&e1);
        for start in 0..g.vertex_count() {
            let report = simple_descent(&e1, &g, Some(start)).unwrap();
            assert_eq!(report.path, vec![start]);
            assert_eq!(report.value, rat(4, 5));
            assert_eq!(report.iterations, 1);
        }
    }

    #[test]
    fn steepest_descent_on_e5_and_e1() {
        let e5 = fixtures::e5();
        let g = build_graph(&e5);
        let q = g.vertex_at(&pt(rat(7, 18), rat(6, 18), rat(5, 18))).unwrap();
        for start in [0usize, 1] {
            let report = steepest_descent(&e5, &g, Some(start)).unwrap();
            assert_eq!(report.path, vec![start, q]);
            assert_eq!(report.value, rat(42, 107));
        }
        let e1 = fixtures::e1();
        let g = build_graph(&e1);
        for start in 0..g.vertex_count() {
            let report = steepest_descent(&e1, &g, Some(start)).unwrap();
            assert_eq!(report.path, vec![start]);
            assert_eq!(report.value, rat(4, 5));
        }
    }

    #[test]
    fn extraction_on_e5_splits_both_items() {
        let e5 = fixtures::e5();
        let report = solve(&e5, Algorithm::Steepest).unwrap();
        assert_eq!(report.value, rat(42, 107));
        assert_eq!(report.split_pattern, SplitPattern::TwoItemsTwoPlayersEach);
        assert_eq!(*report.allocation.share(Player::I, 0), rat(60, 107));
        assert_eq!(*report.allocation.share(Player::III, 0), rat(47, 107));
        assert_eq!(*report.allocation.share(Player::II, 1), rat(70, 107));
        assert_eq!(*report.allocation.share(Player::III, 1), rat(37, 107));
        assert_eq!(report.gamma_star, pt(rat(30, 107), rat(35, 107), rat(42, 107)));
    }

    #[test]
    fn extraction_on_e1_is_integer() {
        let e1 = fixtures::e1();
        for alg in [Algorithm::Simple, Algorithm::Steepest] {
            let report = solve(&e1, alg).unwrap();
            assert_eq!(report.value, rat(4, 5));
            assert_eq!(report.split_pattern, SplitPattern::NoSplit);
            assert!(report.splits.is_empty());
            for (j, p) in Player::ALL.into_iter().enumerate() {
                assert_eq!(*report.allocation.share(p, j), rat(1, 1));
            }
        }
    }

    #[test]
    fn extraction_on_single_item_gives_thirds() {
        let inst = fixtures::single_item();
        let report = solve(&inst, Algorithm::Simple).unwrap();
        assert_eq!(report.value, rat(1, 3));
        assert_eq!(report.split_pattern, SplitPattern::OneItemUpTo3Players);
        for p in Player::ALL {
            assert_eq!(*report.allocation.share(p, 0), rat(1, 3));
        }
    }

    #[test]
    fn extraction_on_e3f_picks_first_equitable_integer_completion() {
        let e3f = fixtures::e3f();
        let report = solve(&e3f, Algorithm::Simple).unwrap();
        assert_eq!(report.value, rat(2, 5));
        assert_eq!(report.split_pattern, SplitPattern::NoSplit);
        assert_eq!(*report.allocation.share(Player::II, 0), rat(1, 1));
        assert_eq!(*report.allocation.share(Player::III, 1), rat(1, 1));
        assert_eq!(*report.allocation.share(Player::I, 2), rat(1, 1));
    }

    #[test]
    fn extraction_on_median_pair() {
        let inst = fixtures::median_pair();
        let report = solve(&inst, Algorithm::Simple).unwrap();
        assert_eq!(report.value, rat(3, 7));
        assert_eq!(report.split_pattern, SplitPattern::OneItemUpTo3Players);
        assert_eq!(*report.allocation.share(Player::I, 1), rat(1, 1));
        assert_eq!(*report.allocation.share(Player::II, 0), rat(1, 2));
        assert_eq!(*report.allocation.share(Player::III, 0), rat(1, 2));
    }

    #[test]
    fn identical_rows_give_a_third() {
        let inst = crate::model::Instance::new(
            [
                vec![rat(1, 2), rat(1, 2)],
                vec![rat(1, 2), rat(1, 2)],
                vec![rat(1, 2), rat(1, 2)],
            ],
            false,
        )
        .unwrap();
        for alg in [Algorithm::Simple, Algorithm::Steepest] {
            let report = solve(&inst, alg).unwrap();
            assert_eq!(report.value, rat(1, 3));
        }
    }
}
