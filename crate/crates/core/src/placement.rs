//! Driver/spectator role assignment.
//!
//! Roles are placed one gate *group* at a time: a driver group is a tuple of
//! `arity(driver_gate)` qubits that will run the driver gate together, and
//! likewise for spectators. Four passes run over freshly shuffled qubit lists:
//!
//! 1. driver groups until the driver threshold is met,
//! 2. spectator groups until the spectator threshold is met,
//! 3. driver groups until no root admits a valid placement,
//! 4. spectator groups until no root admits a valid placement.
//!
//! Passes 3 and 4 are skipped when `fill_passes` is false. Each attempt grows
//! a group from a root along normalized edges (so directed devices fix the
//! tuple orientation), and a group is only accepted when at least one of its
//! qubits touches a qubit of the opposite role. If none exists yet, a
//! neighboring opposite-role group is placed tentatively and dropped again if
//! a real opposite neighbor turns up deeper in the search. Dead ends undo
//! everything placed below them.
//!
//! Thresholds count groups, not qubits: a driver threshold of 3 on a CZ
//! driver asks for 6 driver qubits.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::device::{DeviceTopology, GateSpec};
use crate::rng::SeededRng;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PlacementError {
    #[error("topology cannot host a {driver_arity}-qubit driver group next to a {spectator_arity}-qubit spectator group")]
    InsufficientTopology { driver_arity: usize, spectator_arity: usize },
    #[error("thresholds must be non-negative, got driver={driver}, spectator={spectator}")]
    InvalidThreshold { driver: i64, spectator: i64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Role {
    Unassigned,
    Driver,
    Spectator,
    /// Held by qubits inside an in-progress search only.
    TempMark,
}

impl Role {
    fn opposite(self) -> Role {
        match self {
            Role::Driver => Role::Spectator,
            Role::Spectator => Role::Driver,
            other => other,
        }
    }
}

/// Qubits that run one instance of a gate, in gate-argument order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GateGroup {
    pub qubits: Vec<usize>,
    /// Set when the tuple order is forced by directed edges.
    pub oriented: bool,
}

/// Target group counts for passes 1 and 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Thresholds {
    pub driver: usize,
    pub spectator: usize,
}

impl Thresholds {
    pub fn new(driver: usize, spectator: usize) -> Self {
        Self { driver, spectator }
    }

    /// Accepts signed input (CLI, documents) and rejects negatives.
    pub fn try_new(driver: i64, spectator: i64) -> Result<Self, PlacementError> {
        if driver < 0 || spectator < 0 {
            return Err(PlacementError::InvalidThreshold { driver, spectator });
        }
        Ok(Self::new(driver as usize, spectator as usize))
    }
}

/// Both thresholds are `num_qubits / (arity_spectator + arity_driver)`,
/// floored, and at least 1.
pub fn default_thresholds(topology: &DeviceTopology, spectator_gate: &GateSpec, driver_gate: &GateSpec) -> Thresholds {
    let per_pair = spectator_gate.arity + driver_gate.arity;
    let t = (topology.num_qubits() / per_pair).max(1);
    Thresholds::new(t, t)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoleAssignment {
    pub driver_groups: Vec<GateGroup>,
    pub spectator_groups: Vec<GateGroup>,
    pub roles: Vec<Role>,
    pub seed: u64,
    pub thresholds: Thresholds,
    pub fill_passes_enabled: bool,
}

impl RoleAssignment {
    /// Rebuilds the per-qubit role vector from groups.
    pub fn from_groups(
        num_qubits: usize,
        driver_groups: Vec<GateGroup>,
        spectator_groups: Vec<GateGroup>,
        seed: u64,
        thresholds: Thresholds,
        fill_passes_enabled: bool,
    ) -> Self {
        let mut roles = vec![Role::Unassigned; num_qubits];
        for g in &driver_groups {
            for &q in &g.qubits {
                roles[q] = Role::Driver;
            }
        }
        for g in &spectator_groups {
            for &q in &g.qubits {
                roles[q] = Role::Spectator;
            }
        }
        Self {
            driver_groups,
            spectator_groups,
            roles,
            seed,
            thresholds,
            fill_passes_enabled,
        }
    }

    pub fn driver_qubits(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.driver_groups.iter().flat_map(|g| g.qubits.iter().copied()).collect();
        v.sort_unstable();
        v
    }

    pub fn spectator_qubits(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.spectator_groups.iter().flat_map(|g| g.qubits.iter().copied()).collect();
        v.sort_unstable();
        v
    }

    /// Fraction of device qubits holding a role.
    pub fn utilization(&self) -> f64 {
        let used = self.roles.iter().filter(|r| matches!(r, Role::Driver | Role::Spectator)).count();
        used as f64 / self.roles.len() as f64
    }
}

/// Groups produced by one successful placement attempt.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Placement {
    pub role: Role,
    pub group: GateGroup,
    /// Opposite-role group placed to satisfy the neighbor constraint.
    pub opposite: Option<GateGroup>,
}

impl Placement {
    pub fn new_drivers(&self) -> Vec<usize> {
        self.qubits_with(Role::Driver)
    }

    pub fn new_spectators(&self) -> Vec<usize> {
        self.qubits_with(Role::Spectator)
    }

    fn qubits_with(&self, role: Role) -> Vec<usize> {
        if self.role == role {
            self.group.qubits.clone()
        } else {
            self.opposite.as_ref().map(|g| g.qubits.clone()).unwrap_or_default()
        }
    }
}

/// Per-group search bookkeeping: the tuple built so far, whether a committed
/// or pending opposite neighbor has been *found*, and the opposite group
/// *placed* tentatively, if any.
#[derive(Debug, Clone)]
struct Frame {
    role: Role,
    group: Vec<usize>,
    found: bool,
    placed: Option<Vec<usize>>,
    may_place_opposite: bool,
}

impl Frame {
    fn new(role: Role, may_place_opposite: bool) -> Self {
        Self {
            role,
            group: Vec::new(),
            found: false,
            placed: None,
            may_place_opposite,
        }
    }
}

/// Mutable labeling state shared by all placement attempts of one
/// assignment. Qubits touched by an in-progress attempt carry
/// [`Role::TempMark`] with their intended role kept in `pending`.
pub struct SearchState<'a> {
    topology: &'a DeviceTopology,
    roles: Vec<Role>,
    pending: Vec<Option<Role>>,
    driver_arity: usize,
    spectator_arity: usize,
    driver_groups: Vec<GateGroup>,
    spectator_groups: Vec<GateGroup>,
    rng: &'a mut SeededRng,
}

impl<'a> SearchState<'a> {
    pub fn new(topology: &'a DeviceTopology, driver_arity: usize, spectator_arity: usize, rng: &'a mut SeededRng) -> Self {
        let n = topology.num_qubits();
        Self {
            topology,
            roles: vec![Role::Unassigned; n],
            pending: vec![None; n],
            driver_arity,
            spectator_arity,
            driver_groups: Vec::new(),
            spectator_groups: Vec::new(),
            rng,
        }
    }

    /// Seeds the state with already-committed groups.
    pub fn with_groups(mut self, drivers: Vec<GateGroup>, spectators: Vec<GateGroup>) -> Self {
        for g in &drivers {
            g.qubits.iter().for_each(|&q| self.roles[q] = Role::Driver);
        }
        for g in &spectators {
            g.qubits.iter().for_each(|&q| self.roles[q] = Role::Spectator);
        }
        self.driver_groups.extend(drivers);
        self.spectator_groups.extend(spectators);
        self
    }

    pub fn roles(&self) -> &[Role] {
        &self.roles
    }

    pub fn driver_group_count(&self) -> usize {
        self.driver_groups.len()
    }

    pub fn spectator_group_count(&self) -> usize {
        self.spectator_groups.len()
    }

    /// Attempts a driver group rooted at `root`; commits it on success.
    pub fn try_assign_driver(&mut self, root: usize) -> Option<Placement> {
        self.try_assign(Role::Driver, root)
    }

    /// Attempts a spectator group rooted at `root`; commits it on success.
    pub fn try_assign_spectator(&mut self, root: usize) -> Option<Placement> {
        self.try_assign(Role::Spectator, root)
    }

    fn arity(&self, role: Role) -> usize {
        match role {
            Role::Driver => self.driver_arity,
            _ => self.spectator_arity,
        }
    }

    fn try_assign(&mut self, role: Role, root: usize) -> Option<Placement> {
        if root >= self.roles.len() {
            return None;
        }
        let mut frame = Frame::new(role, true);
        if !self.extend(&mut frame, root, self.arity(role)) {
            debug_assert!(!self.roles.contains(&Role::TempMark));
            return None;
        }
        let oriented = self.topology.is_directed();
        let group = GateGroup {
            oriented: oriented && frame.group.len() > 1,
            qubits: frame.group,
        };
        let opposite = frame.placed.map(|qubits| GateGroup {
            oriented: oriented && qubits.len() > 1,
            qubits,
        });
        self.commit(role, &group);
        if let Some(g) = &opposite {
            self.commit(role.opposite(), g);
        }
        Some(Placement { role, group, opposite })
    }

    fn commit(&mut self, role: Role, group: &GateGroup) {
        for &q in &group.qubits {
            debug_assert_eq!(self.pending[q], Some(role));
            self.roles[q] = role;
            self.pending[q] = None;
        }
        match role {
            Role::Driver => self.driver_groups.push(group.clone()),
            _ => self.spectator_groups.push(group.clone()),
        }
    }

    fn is_free(&self, q: usize) -> bool {
        self.roles[q] == Role::Unassigned
    }

    fn effective_role(&self, q: usize) -> Role {
        match self.roles[q] {
            Role::TempMark => self.pending[q].unwrap_or(Role::TempMark),
            r => r,
        }
    }

    fn mark(&mut self, q: usize, role: Role) {
        self.roles[q] = Role::TempMark;
        self.pending[q] = Some(role);
    }

    fn unmark(&mut self, qubits: &[usize]) {
        for &q in qubits {
            self.roles[q] = Role::Unassigned;
            self.pending[q] = None;
        }
    }

    fn has_opposite_neighbor(&self, q: usize, role: Role, exclude: Option<&[usize]>) -> bool {
        let want = role.opposite();
        self.topology
            .adjacent(q)
            .iter()
            .any(|&v| self.effective_role(v) == want && !exclude.is_some_and(|ex| ex.contains(&v)))
    }

    /// Adds `q` to the frame's group with `remaining` qubits still to place
    /// (including `q`). On failure every change below this call is undone.
    fn extend(&mut self, frame: &mut Frame, q: usize, remaining: usize) -> bool {
        if !self.is_free(q) {
            return false;
        }
        if let Some(&tail) = frame.group.last() {
            if !self.topology.has_edge(tail, q) {
                return false;
            }
        }

        let saved_frame = frame.clone();
        let saved_roles = self.roles.clone();
        let saved_pending = self.pending.clone();

        self.mark(q, frame.role);
        frame.group.push(q);

        if !frame.found && self.has_opposite_neighbor(q, frame.role, frame.placed.as_deref()) {
            frame.found = true;
            // a real neighbor makes the tentative one unnecessary
            if let Some(placed) = frame.placed.take() {
                self.unmark(&placed);
            }
        }
        // With no opposite neighbor yet, first try placing one here; if the
        // rest of the group cannot be built around it, retry without it.
        let try_place = !frame.found && frame.placed.is_none() && frame.may_place_opposite;
        let marked_frame = frame.clone();
        let marked_roles = self.roles.clone();
        let marked_pending = self.pending.clone();
        for place in [true, false] {
            if place {
                if !try_place {
                    continue;
                }
                match self.place_opposite_near(q, frame.role) {
                    Some(group) => frame.placed = Some(group),
                    None => continue,
                }
            }
            let ok = if remaining == 1 {
                frame.found || frame.placed.is_some()
            } else {
                let next = self.rng.shuffled(self.topology.successors(q));
                next.into_iter().any(|n| self.extend(frame, n, remaining - 1))
            };
            if ok {
                return true;
            }
            *frame = marked_frame.clone();
            self.roles.clone_from(&marked_roles);
            self.pending.clone_from(&marked_pending);
        }

        *frame = saved_frame;
        self.roles = saved_roles;
        self.pending = saved_pending;
        false
    }

    /// Tentatively places an opposite-role group rooted at a free neighbor
    /// of `q`. The nested search may not place further groups of its own.
    fn place_opposite_near(&mut self, q: usize, role: Role) -> Option<Vec<usize>> {
        let opposite = role.opposite();
        let arity = self.arity(opposite);
        let candidates = self.rng.shuffled(self.topology.adjacent(q));
        for n in candidates {
            if !self.is_free(n) {
                continue;
            }
            let mut nested = Frame::new(opposite, false);
            if self.extend(&mut nested, n, arity) {
                return Some(nested.group);
            }
        }
        None
    }

    fn run_pass(&mut self, role: Role, limit: Option<usize>) {
        let all: Vec<usize> = (0..self.roles.len()).collect();
        let order = self.rng.shuffled(&all);
        for q in order {
            if let Some(limit) = limit {
                let count = match role {
                    Role::Driver => self.driver_groups.len(),
                    _ => self.spectator_groups.len(),
                };
                if count >= limit {
                    break;
                }
            }
            if self.is_free(q) {
                self.try_assign(role, q);
            }
        }
    }

    fn finish(self, seed: u64, thresholds: Thresholds, fill_passes: bool) -> Result<RoleAssignment, PlacementError> {
        if self.driver_groups.is_empty() || self.spectator_groups.is_empty() {
            return Err(PlacementError::InsufficientTopology {
                driver_arity: self.driver_arity,
                spectator_arity: self.spectator_arity,
            });
        }
        Ok(RoleAssignment {
            driver_groups: self.driver_groups,
            spectator_groups: self.spectator_groups,
            roles: self.roles,
            seed,
            thresholds,
            fill_passes_enabled: fill_passes,
        })
    }
}

/// Runs the four placement passes with a fresh stream seeded by `seed`.
///
/// `thresholds = None` uses [`default_thresholds`]. A zero threshold is
/// treated as one so that passes 1 and 2 always try at least once.
pub fn assign_roles(
    topology: &DeviceTopology,
    spectator_gate: &GateSpec,
    driver_gate: &GateSpec,
    thresholds: Option<Thresholds>,
    fill_passes: bool,
    seed: u64,
) -> Result<RoleAssignment, PlacementError> {
    let mut rng = SeededRng::new(seed);
    assign_roles_with_rng(topology, spectator_gate, driver_gate, thresholds, fill_passes, seed, &mut rng)
}

/// Same as [`assign_roles`] but draws from a caller-owned stream, leaving it
/// positioned after the last placement draw.
pub fn assign_roles_with_rng(
    topology: &DeviceTopology,
    spectator_gate: &GateSpec,
    driver_gate: &GateSpec,
    thresholds: Option<Thresholds>,
    fill_passes: bool,
    seed: u64,
    rng: &mut SeededRng,
) -> Result<RoleAssignment, PlacementError> {
    let thresholds = thresholds.unwrap_or_else(|| default_thresholds(topology, spectator_gate, driver_gate));
    let mut state = SearchState::new(topology, driver_gate.arity, spectator_gate.arity, rng);

    state.run_pass(Role::Driver, Some(thresholds.driver.max(1)));
    state.run_pass(Role::Spectator, Some(thresholds.spectator.max(1)));
    if fill_passes {
        state.run_pass(Role::Driver, None);
        state.run_pass(Role::Spectator, None);
    }
    state.finish(seed, thresholds, fill_passes)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    QubitOutOfRange { qubit: usize },
    TempMarkPresent { qubit: usize },
    SharedQubit { qubit: usize, groups: usize },
    RoleMismatch { qubit: usize, expected: Role, found: Role },
    /// Qubit carries a role but belongs to no group.
    StrayRole { qubit: usize, role: Role },
    MissingEdge { from: usize, to: usize },
    OrientationFlag { qubits: Vec<usize> },
    SpectatorWithoutDriver { qubits: Vec<usize> },
    DriverWithoutSpectator { qubits: Vec<usize> },
    NoDriverGroup,
    NoSpectatorGroup,
    RoleVectorLength { expected: usize, found: usize },
}

/// Lists every broken assignment invariant. The neighbor constraint is
/// checked per gate group: some qubit of the group must touch a qubit of
/// the opposite role.
pub fn validate_assignment(topology: &DeviceTopology, assignment: &RoleAssignment) -> Vec<Violation> {
    let n = topology.num_qubits();
    let mut out = Vec::new();

    if assignment.roles.len() != n {
        out.push(Violation::RoleVectorLength {
            expected: n,
            found: assignment.roles.len(),
        });
        return out;
    }
    if assignment.driver_groups.is_empty() {
        out.push(Violation::NoDriverGroup);
    }
    if assignment.spectator_groups.is_empty() {
        out.push(Violation::NoSpectatorGroup);
    }

    let tagged = assignment
        .driver_groups
        .iter()
        .map(|g| (Role::Driver, g))
        .chain(assignment.spectator_groups.iter().map(|g| (Role::Spectator, g)));

    let mut membership = vec![0usize; n];
    let mut group_role = vec![Role::Unassigned; n];
    let mut in_range_groups = Vec::new();
    for (role, g) in tagged {
        let mut ok = true;
        for &q in &g.qubits {
            if q >= n {
                out.push(Violation::QubitOutOfRange { qubit: q });
                ok = false;
            } else {
                membership[q] += 1;
                group_role[q] = role;
            }
        }
        if ok {
            in_range_groups.push((role, g));
        }
    }

    for q in 0..n {
        let role = assignment.roles[q];
        if role == Role::TempMark {
            out.push(Violation::TempMarkPresent { qubit: q });
            continue;
        }
        match membership[q] {
            0 if role != Role::Unassigned => out.push(Violation::StrayRole { qubit: q, role }),
            0 => {}
            1 if role != group_role[q] => out.push(Violation::RoleMismatch {
                qubit: q,
                expected: group_role[q],
                found: role,
            }),
            1 => {}
            k => out.push(Violation::SharedQubit { qubit: q, groups: k }),
        }
    }

    for (role, g) in in_range_groups {
        for w in g.qubits.windows(2) {
            if !topology.has_edge(w[0], w[1]) {
                out.push(Violation::MissingEdge { from: w[0], to: w[1] });
            }
        }
        let expect_oriented = topology.is_directed() && g.qubits.len() > 1;
        if g.oriented != expect_oriented {
            out.push(Violation::OrientationFlag { qubits: g.qubits.clone() });
        }
        let want = role.opposite();
        let touches = g
            .qubits
            .iter()
            .any(|&q| topology.adjacent(q).iter().any(|&v| assignment.roles[v] == want));
        if !touches {
            out.push(match role {
                Role::Driver => Violation::DriverWithoutSpectator { qubits: g.qubits.clone() },
                _ => Violation::SpectatorWithoutDriver { qubits: g.qubits.clone() },
            });
        }
    }
    out
}
