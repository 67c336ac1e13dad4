//! The vertex/arc graph over the arrangement of supporting segments.
//!
//! Vertices are item points and pairwise segment crossings; arcs join
//! consecutive vertices along a segment. Each vertex corresponds to one face
//! of the Pareto surface and carries its face class and dispute structure.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::geometry::{
    claim_from_weights, item_point, meet_segments, rd_map, DisputeRecord, HomoMeet, HomoPoint,
    ItemClaim, SimplexPoint, SupportSegment,
};
use crate::hull::{classify_points, HullPosition};
use crate::model::{Instance, Player, ValueVector};

/// The six face shapes plus a catch-all for configurations beyond them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FaceClass {
    /// Triangle: an item coincides with the point, nothing else through it.
    F1,
    /// Parallelogram: two supporting segments cross.
    F2,
    /// Hexagon with equal opposite sides: three segments concur.
    F3,
    /// Trapezoid: an item at the point plus one segment through it.
    F4,
    /// Pentagon: an item at the point plus two crossing segments.
    F5,
    /// Hexagon with unequal opposite sides: an item plus three segments.
    F6,
    Degenerate,
}

impl FaceClass {
    pub fn label(self) -> &'static str {
        match self {
            FaceClass::F1 => "F1",
            FaceClass::F2 => "F2",
            FaceClass::F3 => "F3",
            FaceClass::F4 => "F4",
            FaceClass::F5 => "F5",
            FaceClass::F6 => "F6",
            FaceClass::Degenerate => "degenerate",
        }
    }
}

impl std::fmt::Display for FaceClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

/// One vertex of the arrangement graph.
#[derive(Debug, Clone)]
pub struct FaceVertex {
    pub location: SimplexPoint,
    /// Items whose points coincide with the location, ascending.
    pub items_here: Vec<usize>,
    /// Supporting segments of other items passing through the location.
    pub segments_through: Vec<(usize, Player)>,
    pub face_class: FaceClass,
    /// Disputed items at this location, ascending by item.
    pub dispute_set: Vec<DisputeRecord>,
}

/// Undirected arc between two vertices lying consecutively on `carrier`.
#[derive(Debug, Clone)]
pub struct Arc {
    pub endpoints: (usize, usize),
    pub carrier: SupportSegment,
}

#[derive(Debug, Clone)]
pub struct RnsGraph {
    pub vertices: Vec<FaceVertex>,
    pub arcs: Vec<Arc>,
    /// Per vertex: (neighbor, arc index), sorted by neighbor.
    adjacency: Vec<Vec<(usize, usize)>>,
}

impl RnsGraph {
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// Neighbors of `v` with the arcs reaching them, ascending by neighbor.
    pub fn neighbors(&self, v: usize) -> &[(usize, usize)] {
        &self.adjacency[v]
    }

    pub fn class_histogram(&self) -> BTreeMap<FaceClass, usize> {
        let mut hist = BTreeMap::new();
        for v in &self.vertices {
            *hist.entry(v.face_class).or_insert(0) += 1;
        }
        hist
    }

    /// Index of the vertex at an exact location, if any.
    pub fn vertex_at(&self, location: &SimplexPoint) -> Option<usize> {
        self.vertices.iter().position(|v| &v.location == location)
    }

    /// Vertex closest to the simplex center (ties by lowest index).
    pub fn center_most_vertex(&self) -> Option<usize> {
        let center = SimplexPoint::center();
        (0..self.vertices.len()).min_by_key(|&i| self.vertices[i].location.distance_squared(&center))
    }

    /// DOT rendering of the graph for debugging.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph rns {\n  node [shape=circle];\n");
        for (i, v) in self.vertices.iter().enumerate() {
            out.push_str(&format!(
                "  v{} [label=\"v{}: {}\\n{}\"];\n",
                i, i, v.face_class, v.location
            ));
        }
        for arc in &self.arcs {
            out.push_str(&format!(
                "  v{} -- v{} [label=\"item {} toward {}\"];\n",
                arc.endpoints.0,
                arc.endpoints.1,
                arc.carrier.item + 1,
                arc.carrier.toward
            ));
        }
        out.push_str("}\n");
        out
    }
}

/// Recomputes the class of a built vertex from its incidence data.
pub fn classify_vertex(v: &FaceVertex) -> FaceClass {
    let corners: BTreeSet<Player> = v.segments_through.iter().map(|&(_, c)| c).collect();
    classify(v.items_here.len(), corners.len())
}

fn classify(items_here: usize, corners: usize) -> FaceClass {
    match (items_here, corners) {
        // Coincident items merge into one composite good.
        (1.., 0) => FaceClass::F1,
        (0, 2) => FaceClass::F2,
        (0, 3) => FaceClass::F3,
        (1, 1) => FaceClass::F4,
        (1, 2) => FaceClass::F5,
        (1, 3) => FaceClass::F6,
        // Several items at the point plus extra segments, or anything else,
        // falls outside the six shapes; disputes below stay valid regardless.
        _ => FaceClass::Degenerate,
    }
}

/// Builds the arrangement graph: one vertex per item point or crossing,
/// arcs between consecutive vertices along each supporting segment.
///
/// Intersection and ordering run in homogeneous integer arithmetic; exact
/// rational coordinates are materialized once per distinct vertex.
pub fn build_graph(inst: &Instance) -> RnsGraph {
    let m = inst.item_count();
    let segments: Vec<SupportSegment> = (0..m)
        .flat_map(|j| Player::ALL.map(|toward| SupportSegment::new(inst, j, toward)))
        .collect();
    let seg = |item: usize, toward: Player| &segments[item * 3 + toward.index()];

    struct Accum {
        point: HomoPoint,
        items_here: BTreeSet<usize>,
        through: BTreeSet<(usize, Player)>,
    }
    let mut accums: Vec<Accum> = Vec::new();
    let mut index: HashMap<HomoPoint, usize> = HashMap::new();
    let entry = |accums: &mut Vec<Accum>, index: &mut HashMap<HomoPoint, usize>, x: HomoPoint| {
        *index.entry(x.clone()).or_insert_with(|| {
            accums.push(Accum {
                point: x,
                items_here: BTreeSet::new(),
                through: BTreeSet::new(),
            });
            accums.len() - 1
        })
    };

    // Item points first so vertex numbering starts with the items.
    let item_homo: Vec<HomoPoint> =
        (0..m).map(|j| HomoPoint::from_simplex(&item_point(inst, j))).collect();
    for (j, h) in item_homo.iter().enumerate() {
        let at = entry(&mut accums, &mut index, h.clone());
        accums[at].items_here.insert(j);
    }
    for j in 0..m {
        for k in (j + 1)..m {
            for tj in Player::ALL {
                for tk in Player::ALL {
                    if let HomoMeet::Cross(x) = meet_segments(&item_homo[j], tj, &item_homo[k], tk)
                    {
                        let at = entry(&mut accums, &mut index, x);
                        accums[at].through.insert((j, tj));
                        accums[at].through.insert((k, tk));
                    }
                }
            }
        }
    }

    let vertices: Vec<FaceVertex> = accums
        .iter()
        .map(|a| {
            let segments_through: Vec<(usize, Player)> = a
                .through
                .iter()
                .filter(|(item, _)| !a.items_here.contains(item))
                .cloned()
                .collect();
            let mut dispute_set: Vec<DisputeRecord> = a
                .items_here
                .iter()
                .map(|&item| DisputeRecord { item, disputants: Player::ALL.to_vec() })
                .collect();
            for &(item, corner) in &segments_through {
                dispute_set.push(DisputeRecord { item, disputants: corner.others().to_vec() });
            }
            dispute_set.sort_by_key(|d| d.item);
            let corners: BTreeSet<Player> = segments_through.iter().map(|&(_, c)| c).collect();
            FaceVertex {
                location: a.point.to_simplex(),
                items_here: a.items_here.iter().cloned().collect(),
                segments_through,
                face_class: classify(a.items_here.len(), corners.len()),
                dispute_set,
            }
        })
        .collect();

    // Arcs: order the vertices on each supporting segment from the item point
    // toward the corner and join consecutive ones. Along a segment toward
    // corner t, the coordinate of either other player decreases strictly, so
    // the cross-multiplied coordinate ratio serves as the sort key.
    let mut on_segment: HashMap<(usize, Player), Vec<usize>> = HashMap::new();
    for (i, a) in accums.iter().enumerate() {
        let mut incident: BTreeSet<(usize, Player)> = a.through.clone();
        for &item in &a.items_here {
            for toward in Player::ALL {
                incident.insert((item, toward));
            }
        }
        for (item, toward) in incident {
            on_segment.entry((item, toward)).or_default().push(i);
        }
    }

    let mut arcs: Vec<Arc> = Vec::new();
    let mut seen: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut keys: Vec<(usize, Player)> = on_segment.keys().cloned().collect();
    keys.sort();
    for key in keys {
        let mut list = on_segment[&key].clone();
        let axis = key.1.others()[0].index();
        let ratio = |i: usize| -> (&BigInt, BigInt) {
            let h = accums[i].point.coords();
            (&h[axis], h.iter().sum())
        };
        list.sort_by(|&a, &b| {
            let (xa, sa) = ratio(a);
            let (xb, sb) = ratio(b);
            // Larger coordinate ratio means closer to the item end.
            (xb * sa).cmp(&(xa * sb)).then(a.cmp(&b))
        });
        for pair in list.windows(2) {
            let (a, b) = (pair[0], pair[1]);
            let ends = (a.min(b), a.max(b));
            if seen.insert(ends) {
                arcs.push(Arc { endpoints: ends, carrier: seg(key.0, key.1).clone() });
            }
        }
    }

    let mut adjacency: Vec<Vec<(usize, usize)>> = vec![Vec::new(); vertices.len()];
    for (ai, arc) in arcs.iter().enumerate() {
        adjacency[arc.endpoints.0].push((arc.endpoints.1, ai));
        adjacency[arc.endpoints.1].push((arc.endpoints.0, ai));
    }
    for list in &mut adjacency {
        list.sort();
    }

    RnsGraph { vertices, arcs, adjacency }
}

/// Outcome of the allocation rule at a hyperplane point.
#[derive(Debug, Clone)]
pub struct ParResult {
    /// Unique owner per item; `None` when the item is disputed.
    pub fixed_owner: Vec<Option<Player>>,
    /// Disputed items, ascending by item.
    pub disputes: Vec<DisputeRecord>,
    /// Totals of the undisputed items per player.
    pub fixed_value: ValueVector,
}

/// Applies the allocation rule at interior `beta`: each item goes to the
/// argmax of γ_i a_{ij} with γ = RD(beta); ties become disputes.
pub fn par_allocation(inst: &Instance, beta: &SimplexPoint) -> Result<ParResult> {
    let gamma = rd_map(beta)?;
    Ok(par_allocation_with_gamma(inst, &gamma))
}

fn par_allocation_with_gamma(inst: &Instance, gamma: &SimplexPoint) -> ParResult {
    let m = inst.item_count();
    let mut fixed_owner = vec![None; m];
    let mut disputes = Vec::new();
    let mut fixed_value = ValueVector::zero();
    for j in 0..m {
        match claim_from_weights(inst, gamma, j) {
            ItemClaim::Unique(p) => {
                fixed_owner[j] = Some(p);
                fixed_value.0[p.index()] += inst.value(p, j);
            }
            ItemClaim::Disputed(record) => disputes.push(record),
        }
    }
    ParResult { fixed_owner, disputes, fixed_value }
}

/// A maximal group of items contested by the same set of players at one
/// location: either all items coinciding with the point (three disputants) or
/// all items on one disputing segment (two disputants).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Composite {
    pub items: Vec<usize>,
    pub disputants: Vec<Player>,
}

/// Groups disputes into composites: the at-point composite first, then the
/// segment composites ordered by their smallest item.
pub fn composites_from_disputes(disputes: &[DisputeRecord]) -> Vec<Composite> {
    let mut point_items: Vec<usize> = Vec::new();
    let mut pairs: BTreeMap<(Player, Player), Vec<usize>> = BTreeMap::new();
    for d in disputes {
        if d.disputants.len() == 3 {
            point_items.push(d.item);
        } else {
            pairs
                .entry((d.disputants[0], d.disputants[1]))
                .or_default()
                .push(d.item);
        }
    }
    let mut composites = Vec::new();
    if !point_items.is_empty() {
        point_items.sort_unstable();
        composites.push(Composite { items: point_items, disputants: Player::ALL.to_vec() });
    }
    let mut segment_composites: Vec<Composite> = pairs
        .into_iter()
        .map(|((a, b), mut items)| {
            items.sort_unstable();
            Composite { items, disputants: vec![a, b] }
        })
        .collect();
    segment_composites.sort_by_key(|c| c.items[0]);
    composites.extend(segment_composites);
    composites
}

/// Value each player derives from owning a whole composite.
pub(crate) fn composite_totals(inst: &Instance, c: &Composite) -> [BigRational; 3] {
    let mut totals = [BigRational::zero(), BigRational::zero(), BigRational::zero()];
    for &j in &c.items {
        for p in Player::ALL {
            totals[p.index()] += inst.value(p, j);
        }
    }
    totals
}

/// Counts of census points by hull position.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Census {
    pub allocations: usize,
    pub hull_vertices: usize,
    pub on_edge: usize,
    pub interior: usize,
}

/// Value vectors of every assignment of the disputed composites at a vertex,
/// in lexicographic order over (composite, disputant).
pub fn face_allocation_values(inst: &Instance, v: &FaceVertex) -> Result<Vec<ValueVector>> {
    let par = par_allocation(inst, &v.location)?;
    let composites = composites_from_disputes(&par.disputes);
    let totals: Vec<[BigRational; 3]> =
        composites.iter().map(|c| composite_totals(inst, c)).collect();
    let mut choice = vec![0usize; composites.len()];
    let mut out = Vec::new();
    loop {
        let mut value = par.fixed_value.clone();
        for (ci, c) in composites.iter().enumerate() {
            let p = c.disputants[choice[ci]];
            value.0[p.index()] += &totals[ci][p.index()];
        }
        out.push(value);
        // Odometer over the disputant choices.
        let mut pos = composites.len();
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            choice[pos] += 1;
            if choice[pos] < composites[pos].disputants.len() {
                break;
            }
            choice[pos] = 0;
        }
    }
}

/// Enumerates the face's integer completions and classifies their projections
/// against the exact 2D hull on the supporting plane.
pub fn face_allocation_census(inst: &Instance, v: &FaceVertex) -> Result<Census> {
    if v.face_class == FaceClass::Degenerate {
        return Err(Error::DegenerateFace);
    }
    let values = face_allocation_values(inst, v)?;
    // The supporting plane has strictly positive normal, so dropping the
    // third coordinate is injective on it and preserves hull structure.
    let projected: Vec<_> = values
        .iter()
        .map(|vv| (vv.0[0].clone(), vv.0[1].clone()))
        .collect();
    let mut census = Census { allocations: values.len(), hull_vertices: 0, on_edge: 0, interior: 0 };
    for class in classify_points(&projected) {
        match class {
            HullPosition::Vertex => census.hull_vertices += 1,
            HullPosition::OnEdge => census.on_edge += 1,
            HullPosition::Interior => census.interior += 1,
        }
    }
    Ok(census)
}
