//! The environment and the synchronous step of all elementary bodies.
//!
//! An edge `x^i` spans the nodes `x - i/2` and `x + i/2`. Its opposite edge
//! is `(x+i)^-i`: the two edges meet head-on at node `x + i/2`, which is where
//! collisions happen.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::dsl::predicate::Predicate;
use crate::trace::Trace;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dir {
    Minus,
    Plus,
}

impl Dir {
    pub fn sign(self) -> i64 {
        match self {
            Dir::Plus => 1,
            Dir::Minus => -1,
        }
    }

    pub fn from_sign(sign: i64) -> Option<Self> {
        match sign {
            1 => Some(Dir::Plus),
            -1 => Some(Dir::Minus),
            _ => None,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Dir::Plus => Dir::Minus,
            Dir::Minus => Dir::Plus,
        }
    }
}

/// An environment edge `x^dir`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub x: i64,
    pub dir: Dir,
}

impl Edge {
    pub fn new(x: i64, dir: Dir) -> Self {
        Self { x, dir }
    }

    /// `(x+i)^-i`
    pub fn opposite(self) -> Self {
        Self::new(self.x + self.dir.sign(), self.dir.flip())
    }

    /// `x^-i`, where a member lands after a turn.
    pub fn contrary(self) -> Self {
        Self::new(self.x, self.dir.flip())
    }

    /// `(x+i)^i`, where a member lands after straight motion.
    pub fn straight(self) -> Self {
        Self::new(self.x + self.dir.sign(), self.dir)
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self.dir {
            Dir::Plus => '+',
            Dir::Minus => '-',
        };
        write!(f, "{}^{}", self.x, s)
    }
}

/// Per-colour counts on an edge (`own`, including the observer) and on its
/// opposite edge (`opp`). Index `k - 1` holds colour `k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NeighborhoodState {
    pub own: Vec<u32>,
    pub opp: Vec<u32>,
}

impl NeighborhoodState {
    pub fn empty(kinds: usize) -> Self {
        Self {
            own: vec![0; kinds],
            opp: vec![0; kinds],
        }
    }

    pub fn own_total(&self) -> u64 {
        self.own.iter().map(|&c| u64::from(c)).sum()
    }

    pub fn opp_total(&self) -> u64 {
        self.opp.iter().map(|&c| u64::from(c)).sum()
    }
}

/// An isomorphism class of elementary bodies. Its colour is its 1-based
/// position in the world's kind list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Kind {
    pub name: String,
    pub turn: Predicate,
}

impl Kind {
    pub fn new(name: impl Into<String>, turn: Predicate) -> Self {
        Self {
            name: name.into(),
            turn,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Topology {
    /// A ring of `circumference` cells; coordinates live in `[0, circumference)`.
    Cyclic {
        circumference: i64,
    },
    Line,
}

impl Topology {
    fn normalize(self, e: Edge) -> Edge {
        match self {
            Topology::Cyclic { circumference } => Edge::new(e.x.rem_euclid(circumference), e.dir),
            Topology::Line => e,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Member {
    /// 0-based index into the kind list (colour minus one).
    pub kind: usize,
    pub edge: Edge,
}

/// A configuration: kinds, placed members (id = index) and the time.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct World {
    topology: Topology,
    kinds: Arc<[Kind]>,
    members: Vec<Member>,
    time: u64,
}

impl World {
    pub fn new(topology: Topology, kinds: Vec<Kind>, members: Vec<Member>) -> Result<Self> {
        if let Topology::Cyclic { circumference } = topology {
            if circumference <= 0 || circumference % 2 != 0 {
                return Err(Error::BadCircumference(circumference));
            }
            if let Some(m) = members
                .iter()
                .find(|m| !(0..circumference).contains(&m.edge.x))
            {
                return Err(Error::CoordinateOutOfRange {
                    x: m.edge.x,
                    circumference,
                });
            }
        }
        for (i, a) in kinds.iter().enumerate() {
            if let Some(j) = kinds[..i].iter().position(|b| b.turn == a.turn) {
                return Err(Error::DuplicateKind(j + 1, i + 1));
            }
        }
        if let Some(m) = members.iter().find(|m| m.kind >= kinds.len()) {
            return Err(Error::UnknownKind(m.kind + 1));
        }
        Ok(Self {
            topology,
            kinds: kinds.into(),
            members,
            time: 0,
        })
    }

    pub fn topology(&self) -> Topology {
        self.topology
    }

    pub fn kinds(&self) -> &[Kind] {
        &self.kinds
    }

    pub fn members(&self) -> &[Member] {
        &self.members
    }

    pub fn time(&self) -> u64 {
        self.time
    }

    fn occupancy(&self) -> HashMap<Edge, Vec<u32>> {
        let mut occ: HashMap<Edge, Vec<u32>> = HashMap::new();
        for m in &self.members {
            occ.entry(m.edge)
                .or_insert_with(|| vec![0; self.kinds.len()])[m.kind] += 1;
        }
        occ
    }

    fn state_from(&self, occ: &HashMap<Edge, Vec<u32>>, e: Edge) -> NeighborhoodState {
        let zero = || vec![0; self.kinds.len()];
        let e = self.topology.normalize(e);
        let opp = self.topology.normalize(e.opposite());
        NeighborhoodState {
            own: occ.get(&e).cloned().unwrap_or_else(zero),
            opp: occ.get(&opp).cloned().unwrap_or_else(zero),
        }
    }

    /// Counts per colour on `e` and on its opposite edge.
    pub fn neighborhood_state(&self, e: Edge) -> NeighborhoodState {
        self.state_from(&self.occupancy(), e)
    }

    /// Advances every member by one tick and reports which members turned.
    pub fn step_with_turns(&self) -> (World, Vec<bool>) {
        let occ = self.occupancy();
        let mut turned = Vec::with_capacity(self.members.len());
        let members = self
            .members
            .iter()
            .map(|m| {
                let ns = self.state_from(&occ, m.edge);
                // A member can only turn when something sits on the opposite edge.
                let turn = ns.opp_total() >= 1 && self.kinds[m.kind].turn.eval(&ns);
                turned.push(turn);
                let next = if turn {
                    m.edge.contrary()
                } else {
                    m.edge.straight()
                };
                Member {
                    kind: m.kind,
                    edge: self.topology.normalize(next),
                }
            })
            .collect();
        let world = World {
            topology: self.topology,
            kinds: Arc::clone(&self.kinds),
            members,
            time: self.time + 1,
        };
        (world, turned)
    }

    pub fn step(&self) -> World {
        self.step_with_turns().0
    }

    /// Runs `steps` ticks and records every member's edge with coordinates
    /// lifted to the integers.
    pub fn run(&self, steps: usize) -> Trace {
        let colors = self.members.iter().map(|m| m.kind + 1).collect();
        let mut frames = Vec::with_capacity(steps + 1);
        let mut lifted: Vec<Edge> = self.members.iter().map(|m| m.edge).collect();
        frames.push(lifted.clone());
        let mut world = self.clone();
        for _ in 0..steps {
            let (next, turned) = world.step_with_turns();
            for (e, turn) in lifted.iter_mut().zip(turned) {
                *e = if turn { e.contrary() } else { e.straight() };
            }
            frames.push(lifted.clone());
            world = next;
        }
        Trace::new(colors, frames).expect("engine output satisfies the trace invariants")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn relay() -> Kind {
        Kind::new("relay", Predicate::parse("opp >= 1").unwrap())
    }

    fn member(x: i64, dir: Dir) -> Member {
        Member {
            kind: 0,
            edge: Edge::new(x, dir),
        }
    }

    /// Example 1: every cell occupied, even cells facing right, odd facing left.
    fn example1(circumference: i64) -> World {
        let members = (0..circumference)
            .map(|x| member(x, if x % 2 == 0 { Dir::Plus } else { Dir::Minus }))
            .collect();
        World::new(Topology::Cyclic { circumference }, vec![relay()], members).unwrap()
    }

    fn example2(circumference: i64) -> World {
        let members = (0..circumference / 4 * 3)
            .map(|n| {
                let x = 4 * (n / 3) + n % 3;
                member(x, if n % 3 == 1 { Dir::Minus } else { Dir::Plus })
            })
            .collect();
        World::new(Topology::Cyclic { circumference }, vec![relay()], members).unwrap()
    }

    #[test]
    fn opposite_edges() {
        assert_eq!(Edge::new(0, Dir::Plus).opposite(), Edge::new(1, Dir::Minus));
        assert_eq!(Edge::new(1, Dir::Minus).opposite(), Edge::new(0, Dir::Plus));
        assert_eq!(Edge::new(5, Dir::Plus).opposite(), Edge::new(6, Dir::Minus));
    }

    #[test]
    fn neighborhood_counts() {
        let w = example1(8);
        let ns = w.neighborhood_state(Edge::new(0, Dir::Plus));
        assert_eq!((ns.own, ns.opp), (vec![1], vec![1]));

        let empty = World::new(Topology::Line, vec![relay()], vec![]).unwrap();
        assert_eq!(
            empty.neighborhood_state(Edge::new(3, Dir::Minus)),
            NeighborhoodState::empty(1)
        );

        let crowd = World::new(
            Topology::Line,
            vec![relay()],
            vec![
                member(0, Dir::Plus),
                member(0, Dir::Plus),
                member(1, Dir::Minus),
            ],
        )
        .unwrap();
        let ns = crowd.neighborhood_state(Edge::new(0, Dir::Plus));
        assert_eq!((ns.own, ns.opp), (vec![2], vec![1]));
    }

    #[test]
    fn cyclic_wraps_opposite() {
        let w = World::new(
            Topology::Cyclic { circumference: 4 },
            vec![relay()],
            vec![member(3, Dir::Plus), member(0, Dir::Minus)],
        )
        .unwrap();
        let next = w.step();
        assert_eq!(next.members()[0].edge, Edge::new(3, Dir::Minus));
        assert_eq!(next.members()[1].edge, Edge::new(0, Dir::Plus));
    }

    #[test]
    fn example1_everyone_turns() {
        let w = example1(8);
        let (next, turned) = w.step_with_turns();
        assert!(turned.iter().all(|&t| t));
        for (a, b) in w.members().iter().zip(next.members()) {
            assert_eq!(b.edge, a.edge.contrary());
        }
        assert_eq!(next.time(), 1);
    }

    #[test]
    fn vacuum_mover_goes_straight() {
        let w = World::new(Topology::Line, vec![relay()], vec![member(0, Dir::Plus)]).unwrap();
        assert_eq!(w.step().members()[0].edge, Edge::new(1, Dir::Plus));
    }

    #[test]
    fn vacuum_rule_overrides_predicate() {
        let always = Kind::new("eager", Predicate::parse("own >= 0").unwrap());
        let w = World::new(Topology::Line, vec![always], vec![member(0, Dir::Minus)]).unwrap();
        assert_eq!(w.step().members()[0].edge, Edge::new(-1, Dir::Minus));
    }

    #[test]
    fn example2_member_two_moves_on() {
        let w = example2(24);
        assert_eq!(w.members()[2].edge, Edge::new(2, Dir::Plus));
        assert_eq!(w.step().members()[2].edge, Edge::new(3, Dir::Plus));
    }

    #[test]
    fn example1_run_two_steps() {
        let trace = example1(8).run(2);
        let hist: Vec<Edge> = (0..=2).map(|t| trace.edge(0, t).unwrap()).collect();
        assert_eq!(
            hist,
            vec![
                Edge::new(0, Dir::Plus),
                Edge::new(0, Dir::Minus),
                Edge::new(0, Dir::Plus)
            ]
        );
    }

    #[test]
    fn single_step_run_matches_step() {
        let w = example2(24);
        let trace = w.run(1);
        let next = w.step();
        for (i, m) in next.members().iter().enumerate() {
            assert_eq!(trace.edge(i, 1).unwrap(), m.edge);
        }
    }

    #[test]
    fn example2_repeats_shifted_after_three_steps() {
        let trace = example2(24).run(3);
        for m in 0..trace.member_count() {
            let a = trace.edge(m, 0).unwrap();
            let b = trace.edge(m, 3).unwrap();
            assert_eq!(b, Edge::new(a.x + 1, a.dir));
        }
    }

    #[test]
    fn rejects_bad_worlds() {
        assert_eq!(
            World::new(Topology::Cyclic { circumference: 7 }, vec![relay()], vec![]).unwrap_err(),
            Error::BadCircumference(7)
        );
        assert!(matches!(
            World::new(
                Topology::Cyclic { circumference: 4 },
                vec![relay()],
                vec![member(4, Dir::Plus)]
            ),
            Err(Error::CoordinateOutOfRange { .. })
        ));
        assert_eq!(
            World::new(Topology::Line, vec![relay(), relay()], vec![]).unwrap_err(),
            Error::DuplicateKind(1, 2)
        );
    }

    fn arb_world() -> impl Strategy<Value = World> {
        let preds = [
            "opp >= 1",
            "q[1] >= 2",
            "own = 1 and opp >= 1",
            "p[2] > 0 or q[2] = 1",
        ];
        (
            1i64..=8,
            prop::collection::vec((0i64..16, any::<bool>(), 0usize..2), 0..12),
            0usize..4,
        )
            .prop_map(move |(half, placed, pred)| {
                let circumference = 2 * half;
                let kinds = vec![
                    Kind::new("a", Predicate::parse(preds[pred]).unwrap()),
                    Kind::new("b", Predicate::parse("opp = 1").unwrap()),
                ];
                let members = placed
                    .into_iter()
                    .map(|(x, plus, kind)| Member {
                        kind,
                        edge: Edge::new(
                            x % circumference,
                            if plus { Dir::Plus } else { Dir::Minus },
                        ),
                    })
                    .collect();
                World::new(Topology::Cyclic { circumference }, kinds, members).unwrap()
            })
    }

    proptest! {
        #[test]
        fn opposite_is_an_involution(x in -1000i64..1000, plus in any::<bool>()) {
            let e = Edge::new(x, if plus { Dir::Plus } else { Dir::Minus });
            prop_assert_eq!(e.opposite().opposite(), e);
        }

        #[test]
        fn step_is_deterministic_and_local(w in arb_world()) {
            let (a, turned) = w.step_with_turns();
            prop_assert_eq!(&a, &w.step());
            for ((m, next), turn) in w.members().iter().zip(a.members()).zip(turned) {
                let ns = w.neighborhood_state(m.edge);
                if ns.opp_total() == 0 {
                    prop_assert!(!turn);
                }
                prop_assert_eq!(turn, ns.opp_total() >= 1 && w.kinds()[m.kind].turn.eval(&ns));
                prop_assert_eq!(next.kind, m.kind);
            }
        }

        #[test]
        fn each_tick_is_one_move_or_one_turn(w in arb_world(), steps in 1usize..24) {
            let trace = w.run(steps);
            for m in 0..trace.member_count() {
                for t in 0..steps {
                    let a = trace.edge(m, t).unwrap();
                    let b = trace.edge(m, t + 1).unwrap();
                    let flipped = i64::from(a.dir != b.dir);
                    prop_assert_eq!((b.x - a.x).abs() + flipped, 1);
                }
            }
        }

        #[test]
        fn lifted_coordinates_reduce_to_wrapped(w in arb_world(), steps in 1usize..24) {
            let Topology::Cyclic { circumference } = w.topology() else { unreachable!() };
            let trace = w.run(steps);
            let mut world = w.clone();
            for t in 0..=steps {
                for (m, member) in world.members().iter().enumerate() {
                    let lifted = trace.edge(m, t).unwrap();
                    prop_assert_eq!(lifted.x.rem_euclid(circumference), member.edge.x);
                    prop_assert_eq!(lifted.dir, member.edge.dir);
                }
                world = world.step();
            }
        }
    }
}
