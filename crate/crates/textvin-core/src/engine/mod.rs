//! Deterministic, seedable grid-world game engine.
//!
//! A game is described by a [`GameSpec`] (parsed from the line-oriented
//! document format in [`format`]). Episodes are rolled out with
//! [`reset`] and [`step`]; all stochastic entity behavior draws from the
//! caller-supplied rng, so `(spec, seed, action sequence)` fully
//! determines a trajectory.

pub mod format;
pub mod levels;

use alloc::string::String;
use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;
use rand::Rng;
use rand_chacha::ChaCha12Rng;

/// Avatar actions. The engine's action set is fixed at five moves.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u8)]
pub enum Action {
    Up = 0,
    Down = 1,
    Left = 2,
    Right = 3,
    Stay = 4,
}

/// Number of actions available to the avatar.
pub const NUM_ACTIONS: usize = 5;

impl Action {
    pub const ALL: [Action; NUM_ACTIONS] =
        [Action::Up, Action::Down, Action::Left, Action::Right, Action::Stay];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Option<Action> {
        Action::ALL.get(i).copied()
    }

    /// Row/column displacement of the move.
    pub fn delta(self) -> (isize, isize) {
        match self {
            Action::Up => (-1, 0),
            Action::Down => (1, 0),
            Action::Left => (0, -1),
            Action::Right => (0, 1),
            Action::Stay => (0, 0),
        }
    }
}

/// Facing for patrol entities, shooters and projectiles.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dir {
    Up,
    Down,
    Left,
    Right,
}

impl Dir {
    pub fn delta(self) -> (isize, isize) {
        match self {
            Dir::Up => (-1, 0),
            Dir::Down => (1, 0),
            Dir::Left => (0, -1),
            Dir::Right => (0, 1),
        }
    }

    pub fn flip(self) -> Dir {
        match self {
            Dir::Up => Dir::Down,
            Dir::Down => Dir::Up,
            Dir::Left => Dir::Right,
            Dir::Right => Dir::Left,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Dir::Up => "up",
            Dir::Down => "down",
            Dir::Left => "left",
            Dir::Right => "right",
        }
    }
}

/// Movement rule of a non-player entity.
#[derive(Debug, Clone, PartialEq)]
pub enum Behavior {
    Static,
    HorizontalPatrol { start: Dir },
    VerticalPatrol { start: Dir },
    RandomWalk,
    Chaser,
    Fleer,
    Shooter { dir: Dir, period: u32, projectile: String },
    Resource,
    Friend,
    Enemy,
    Door,
    Projectile { dir: Dir },
}

impl Behavior {
    /// Whether this behavior moves across the grid on its own.
    pub fn is_mover(&self) -> bool {
        matches!(
            self,
            Behavior::HorizontalPatrol { .. }
                | Behavior::VerticalPatrol { .. }
                | Behavior::RandomWalk
                | Behavior::Chaser
                | Behavior::Fleer
                | Behavior::Projectile { .. }
        )
    }

    /// Initial facing for entities that keep one.
    fn initial_dir(&self) -> Dir {
        match self {
            Behavior::HorizontalPatrol { start } | Behavior::VerticalPatrol { start } => *start,
            Behavior::Projectile { dir } | Behavior::Shooter { dir, .. } => *dir,
            _ => Dir::Up,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Behavior::Static => "static",
            Behavior::HorizontalPatrol { .. } => "horizontal-patrol",
            Behavior::VerticalPatrol { .. } => "vertical-patrol",
            Behavior::RandomWalk => "random-walk",
            Behavior::Chaser => "chaser",
            Behavior::Fleer => "fleer",
            Behavior::Shooter { .. } => "shooter",
            Behavior::Resource => "resource",
            Behavior::Friend => "friend",
            Behavior::Enemy => "enemy",
            Behavior::Door => "door",
            Behavior::Projectile { .. } => "projectile",
        }
    }
}

/// Effect of avatar contact with an entity.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Interaction {
    /// Reward delta granted on contact.
    pub reward: f64,
    /// Episode ends (successfully) on contact.
    pub terminate: bool,
    /// Episode ends and the avatar dies on contact. Implies `terminate`.
    pub kill: bool,
    /// Entity is removed from the grid on contact.
    pub consume: bool,
}

/// One entity type of a game.
#[derive(Debug, Clone, PartialEq)]
pub struct EntityDef {
    pub symbol: String,
    pub behavior: Behavior,
    /// Moves per step for movers, in (0, 1]. Zero for stationary kinds.
    pub speed: f64,
    pub interaction: Interaction,
}

impl EntityDef {
    /// Movers advance every `period()`-th step.
    pub fn period(&self) -> u32 {
        if self.speed <= 0.0 {
            u32::MAX
        } else {
            libm::ceil(1.0 / self.speed) as u32
        }
    }

    /// Collectibles are what "meet all friends" and "collect and exit"
    /// goals count: consumable entities with positive contact reward.
    pub fn is_collectible(&self) -> bool {
        self.interaction.consume && self.interaction.reward > 0.0 && !self.interaction.terminate
    }
}

/// Episode termination rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GoalCondition {
    /// Episode ends when the avatar reaches this cell.
    ReachCell { row: usize, col: usize },
    /// Episode ends when every collectible entity has been contacted.
    MeetAllFriends,
    /// Doors become exits once every collectible has been picked up.
    CollectAndExit,
}

/// Parsed definition of one game instance.
#[derive(Debug, Clone, PartialEq)]
pub struct GameSpec {
    pub name: String,
    pub rows: usize,
    pub cols: usize,
    pub entities: Vec<EntityDef>,
    pub avatar_start: (usize, usize),
    /// Initial entity placements in layout (row-major) order.
    pub placements: Vec<(usize, usize, String)>,
    pub step_penalty: f64,
    pub max_steps: u32,
    pub goal: GoalCondition,
    /// Extra reward granted when the goal condition fires.
    pub goal_reward: f64,
}

impl GameSpec {
    pub fn entity(&self, symbol: &str) -> Option<&EntityDef> {
        self.entities.iter().find(|e| e.symbol == symbol)
    }

    fn entity_index(&self, symbol: &str) -> Option<usize> {
        self.entities.iter().position(|e| e.symbol == symbol)
    }

    /// Maximum attainable episode reward, ignoring step penalties.
    pub fn max_episode_reward(&self) -> f64 {
        let collected: f64 = self
            .placements
            .iter()
            .filter_map(|(_, _, s)| self.entity(s))
            .filter(|d| d.is_collectible())
            .map(|d| d.interaction.reward)
            .sum();
        let door: f64 = self
            .entities
            .iter()
            .filter(|d| matches!(d.behavior, Behavior::Door))
            .map(|d| d.interaction.reward)
            .fold(0.0, f64::max);
        match self.goal {
            GoalCondition::ReachCell { .. } => collected + self.goal_reward,
            GoalCondition::MeetAllFriends => collected + self.goal_reward,
            GoalCondition::CollectAndExit => collected + door + self.goal_reward,
        }
    }

    /// Checks every structural invariant; parse calls this before
    /// returning a spec.
    pub fn validate(&self) -> Result<(), SpecError> {
        if self.rows == 0 || self.cols == 0 {
            return Err(SpecError::invalid("meta.grid", "grid dimensions must be at least 1x1"));
        }
        if self.max_steps == 0 {
            return Err(SpecError::invalid("meta.max_steps", "max_steps must be positive"));
        }
        if !self.step_penalty.is_finite() || !self.goal_reward.is_finite() {
            return Err(SpecError::invalid("meta", "rewards must be finite"));
        }
        if self.avatar_start.0 >= self.rows || self.avatar_start.1 >= self.cols {
            return Err(SpecError::invalid("layout.avatar", "avatar outside the grid"));
        }
        for (i, def) in self.entities.iter().enumerate() {
            if def.symbol.is_empty() || def.symbol == "A" || def.symbol == "." {
                return Err(SpecError::invalid(
                    &def.symbol,
                    "entity symbol must be non-empty and not 'A' or '.'",
                ));
            }
            if self.entities[..i].iter().any(|e| e.symbol == def.symbol) {
                return Err(SpecError::invalid(&def.symbol, "duplicate entity symbol"));
            }
            if !def.interaction.reward.is_finite() {
                return Err(SpecError::invalid(&def.symbol, "interaction reward must be finite"));
            }
            if def.behavior.is_mover() {
                if !(def.speed > 0.0 && def.speed <= 1.0) {
                    return Err(SpecError::invalid(&def.symbol, "mover speed must be in (0, 1]"));
                }
            } else if def.speed != 0.0 {
                return Err(SpecError::invalid(&def.symbol, "stationary entity speed must be 0"));
            }
            match &def.behavior {
                Behavior::Projectile { .. } if def.speed != 1.0 => {
                    return Err(SpecError::invalid(&def.symbol, "projectile speed must be 1"));
                }
                Behavior::Shooter { period, projectile, .. } => {
                    if *period == 0 {
                        return Err(SpecError::invalid(&def.symbol, "shooter period must be positive"));
                    }
                    match self.entity(projectile) {
                        Some(p) if matches!(p.behavior, Behavior::Projectile { .. }) => {}
                        Some(_) => {
                            return Err(SpecError::invalid(
                                &def.symbol,
                                "shooter projectile must have projectile behavior",
                            ))
                        }
                        None => {
                            return Err(SpecError::invalid(&def.symbol, "shooter projectile not defined"))
                        }
                    }
                }
                _ => {}
            }
        }
        for (r, c, sym) in &self.placements {
            if *r >= self.rows || *c >= self.cols {
                return Err(SpecError::invalid(sym, "placement outside the grid"));
            }
            if self.entity(sym).is_none() {
                return Err(SpecError::invalid(sym, "layout symbol not defined in entities"));
            }
        }
        if let GoalCondition::ReachCell { row, col } = self.goal {
            if row >= self.rows || col >= self.cols {
                return Err(SpecError::invalid("meta.goal", "reach-cell target outside the grid"));
            }
        }
        if matches!(self.goal, GoalCondition::CollectAndExit)
            && !self
                .placements
                .iter()
                .any(|(_, _, s)| matches!(self.entity(s).map(|d| &d.behavior), Some(Behavior::Door)))
        {
            return Err(SpecError::invalid("meta.goal", "collect-and-exit requires a door"));
        }
        Ok(())
    }
}

/// A live entity on the grid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EntityInstance {
    pub symbol: String,
    pub def_index: usize,
    pub pos: (usize, usize),
    pub dir: Dir,
    removed: bool,
}

/// Full observable game state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct State {
    pub rows: usize,
    pub cols: usize,
    pub avatar_pos: (usize, usize),
    pub step: u32,
    pub alive: bool,
    done: bool,
    instances: Vec<EntityInstance>,
}

impl State {
    /// Live entity instances, in deterministic order.
    pub fn entities(&self) -> &[EntityInstance] {
        &self.instances
    }

    /// Episode finished (by goal, death or timeout).
    pub fn is_done(&self) -> bool {
        self.done
    }

    /// Symbols present at a cell; a cell may hold several entities.
    pub fn symbols_at(&self, row: usize, col: usize) -> impl Iterator<Item = &str> {
        self.instances
            .iter()
            .filter(move |e| e.pos == (row, col))
            .map(|e| e.symbol.as_str())
    }

    fn collectibles_remaining(&self, spec: &GameSpec) -> usize {
        self.instances
            .iter()
            .filter(|e| spec.entities[e.def_index].is_collectible())
            .count()
    }
}

/// One stored interaction with an environment.
#[derive(Debug, Clone, PartialEq)]
pub struct Transition {
    pub s: State,
    pub a: Action,
    pub r: f64,
    pub s_next: State,
    pub terminal: bool,
    /// Index of the game instance the transition came from.
    pub env_id: u32,
    /// Seed used to sample entity descriptions for this episode.
    pub episode_seed: u64,
}

/// Error kinds for spec parsing and validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpecError {
    /// Syntax problem at a source line.
    Malformed { line: usize, msg: String },
    /// The document parsed but violates a structural invariant.
    Invalid { what: String, msg: String },
}

impl SpecError {
    fn invalid(what: &str, msg: &str) -> SpecError {
        SpecError::Invalid { what: what.to_string(), msg: msg.to_string() }
    }
}

impl fmt::Display for SpecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpecError::Malformed { line, msg } => write!(f, "malformed spec at line {line}: {msg}"),
            SpecError::Invalid { what, msg } => write!(f, "invalid spec ({what}): {msg}"),
        }
    }
}

impl core::error::Error for SpecError {}

/// Stepping a finished episode.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SteppedTerminalState;

impl fmt::Display for SteppedTerminalState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "step called on a terminal state")
    }
}

impl core::error::Error for SteppedTerminalState {}

/// Friends-and-enemies instance sampling failure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PoolTooSmall {
    pub have: usize,
    pub need: usize,
}

impl fmt::Display for PoolTooSmall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "entity pool too small: have {}, need {}", self.have, self.need)
    }
}

impl core::error::Error for PoolTooSmall {}

/// Instantiates the start state of a spec. The seed is accepted for
/// interface stability; layouts are fully resolved in the spec, so the
/// start state is a pure function of the spec.
pub fn reset(spec: &GameSpec, _seed: u64) -> State {
    let instances = spec
        .placements
        .iter()
        .map(|(r, c, sym)| {
            let def_index = spec.entity_index(sym).expect("validated spec");
            EntityInstance {
                symbol: sym.clone(),
                def_index,
                pos: (*r, *c),
                dir: spec.entities[def_index].behavior.initial_dir(),
                removed: false,
            }
        })
        .collect();
    State {
        rows: spec.rows,
        cols: spec.cols,
        avatar_pos: spec.avatar_start,
        step: 0,
        alive: true,
        done: false,
        instances,
    }
}

struct StepEffects {
    reward: f64,
    terminal: bool,
}

/// Advances the state by one avatar action. Returns the step reward
/// (including the step penalty) and whether the episode ended.
pub fn step(
    spec: &GameSpec,
    state: &mut State,
    action: Action,
    rng: &mut ChaCha12Rng,
) -> Result<(f64, bool), SteppedTerminalState> {
    if state.done {
        return Err(SteppedTerminalState);
    }
    state.step += 1;
    let t = state.step;
    let mut fx = StepEffects { reward: 0.0, terminal: false };

    // Avatar move; the grid border blocks.
    let (dr, dc) = action.delta();
    let nr = state.avatar_pos.0 as isize + dr;
    let nc = state.avatar_pos.1 as isize + dc;
    let moved = nr >= 0 && nr < state.rows as isize && nc >= 0 && nc < state.cols as isize;
    if moved && (nr as usize, nc as usize) != state.avatar_pos {
        state.avatar_pos = (nr as usize, nc as usize);
        for i in 0..state.instances.len() {
            if fx.terminal {
                break;
            }
            if !state.instances[i].removed && state.instances[i].pos == state.avatar_pos {
                contact(spec, state, i, &mut fx);
            }
        }
    }

    // Entity moves, in instance order, on their period.
    if !fx.terminal {
        for i in 0..state.instances.len() {
            if fx.terminal {
                break;
            }
            if state.instances[i].removed {
                continue;
            }
            let def = &spec.entities[state.instances[i].def_index];
            if !def.behavior.is_mover() || t % def.period() != 0 {
                continue;
            }
            move_entity(spec, state, i, rng);
            if !state.instances[i].removed && state.instances[i].pos == state.avatar_pos {
                contact(spec, state, i, &mut fx);
            }
        }
    }

    // Shooters spawn projectiles on their firing period.
    if !fx.terminal {
        for i in 0..state.instances.len() {
            if fx.terminal {
                break;
            }
            if state.instances[i].removed {
                continue;
            }
            let def = &spec.entities[state.instances[i].def_index];
            if let Behavior::Shooter { dir, period, projectile } = &def.behavior {
                if t % period != 0 {
                    continue;
                }
                let (dr, dc) = dir.delta();
                let pr = state.instances[i].pos.0 as isize + dr;
                let pc = state.instances[i].pos.1 as isize + dc;
                if pr < 0 || pr >= state.rows as isize || pc < 0 || pc >= state.cols as isize {
                    continue;
                }
                let def_index = spec.entity_index(projectile).expect("validated spec");
                state.instances.push(EntityInstance {
                    symbol: projectile.clone(),
                    def_index,
                    pos: (pr as usize, pc as usize),
                    dir: *dir,
                    removed: false,
                });
                let j = state.instances.len() - 1;
                if state.instances[j].pos == state.avatar_pos {
                    contact(spec, state, j, &mut fx);
                }
            }
        }
    }

    fx.reward += spec.step_penalty;

    if !fx.terminal {
        let goal_met = match spec.goal {
            GoalCondition::ReachCell { row, col } => state.avatar_pos == (row, col),
            GoalCondition::MeetAllFriends => state.collectibles_remaining(spec) == 0,
            GoalCondition::CollectAndExit => false, // fires through door contact
        };
        if goal_met {
            fx.reward += spec.goal_reward;
            fx.terminal = true;
        }
    }
    if t >= spec.max_steps {
        fx.terminal = true;
    }

    state.instances.retain(|e| !e.removed);
    state.done = fx.terminal;
    Ok((fx.reward, fx.terminal))
}

/// Applies avatar contact with instance `i`: consume, then reward, then
/// terminate, in that fixed order.
fn contact(spec: &GameSpec, state: &mut State, i: usize, fx: &mut StepEffects) {
    let def = &spec.entities[state.instances[i].def_index];
    if matches!(def.behavior, Behavior::Door) {
        // Doors act only once every collectible is gone.
        if matches!(spec.goal, GoalCondition::CollectAndExit)
            && state.collectibles_remaining(spec) > 0
        {
            return;
        }
    }
    let inter = def.interaction;
    if inter.consume {
        state.instances[i].removed = true;
    }
    fx.reward += inter.reward;
    if inter.kill {
        state.alive = false;
        fx.terminal = true;
    } else if inter.terminate {
        fx.terminal = true;
    }
}

fn in_grid(state: &State, r: isize, c: isize) -> bool {
    r >= 0 && r < state.rows as isize && c < state.cols as isize && c >= 0
}

fn move_entity(spec: &GameSpec, state: &mut State, i: usize, rng: &mut ChaCha12Rng) {
    let (r, c) = state.instances[i].pos;
    let behavior = spec.entities[state.instances[i].def_index].behavior.clone();
    match behavior {
        Behavior::HorizontalPatrol { .. } | Behavior::VerticalPatrol { .. } => {
            let mut dir = state.instances[i].dir;
            let (dr, dc) = dir.delta();
            if !in_grid(state, r as isize + dr, c as isize + dc) {
                dir = dir.flip();
            }
            let (dr, dc) = dir.delta();
            let (nr, nc) = (r as isize + dr, c as isize + dc);
            state.instances[i].dir = dir;
            if in_grid(state, nr, nc) {
                state.instances[i].pos = (nr as usize, nc as usize);
            }
        }
        Behavior::RandomWalk => {
            let dirs = [Dir::Up, Dir::Down, Dir::Left, Dir::Right];
            let d = dirs[rng.gen_range(0..4)];
            let (dr, dc) = d.delta();
            let (nr, nc) = (r as isize + dr, c as isize + dc);
            if in_grid(state, nr, nc) {
                state.instances[i].pos = (nr as usize, nc as usize);
            }
        }
        Behavior::Chaser | Behavior::Fleer => {
            let target = state.avatar_pos;
            let dist = |rr: usize, cc: usize| {
                (rr as isize - target.0 as isize).unsigned_abs()
                    + (cc as isize - target.1 as isize).unsigned_abs()
            };
            let mut candidates: Vec<(usize, usize)> = Vec::with_capacity(5);
            candidates.push((r, c));
            for d in [Dir::Up, Dir::Down, Dir::Left, Dir::Right] {
                let (dr, dc) = d.delta();
                let (nr, nc) = (r as isize + dr, c as isize + dc);
                if in_grid(state, nr, nc) {
                    candidates.push((nr as usize, nc as usize));
                }
            }
            let chase = matches!(behavior, Behavior::Chaser);
            let best = candidates
                .iter()
                .map(|&(rr, cc)| dist(rr, cc))
                .fold(if chase { usize::MAX } else { 0 }, |acc, d| {
                    if chase {
                        acc.min(d)
                    } else {
                        acc.max(d)
                    }
                });
            let ties: Vec<(usize, usize)> =
                candidates.into_iter().filter(|&(rr, cc)| dist(rr, cc) == best).collect();
            let pick = ties[rng.gen_range(0..ties.len())];
            state.instances[i].pos = pick;
        }
        Behavior::Projectile { .. } => {
            let (dr, dc) = state.instances[i].dir.delta();
            let (nr, nc) = (r as isize + dr, c as isize + dc);
            if in_grid(state, nr, nc) {
                state.instances[i].pos = (nr as usize, nc as usize);
            } else {
                state.instances[i].removed = true;
            }
        }
        _ => {}
    }
}

/// Samples a friends-and-enemies game instance: `count` non-player
/// entities (half collectible friends, half hostile) from the pool,
/// placed at distinct random cells of a `rows x cols` grid. Projectile
/// definitions referenced by sampled shooters are carried along.
pub fn sample_fe_instance(
    pool: &[EntityDef],
    count: usize,
    seed: u64,
) -> Result<GameSpec, PoolTooSmall> {
    sample_fe_instance_sized(pool, count, seed, 16, 16, 100)
}

/// As [`sample_fe_instance`] with explicit grid size and step budget.
pub fn sample_fe_instance_sized(
    pool: &[EntityDef],
    count: usize,
    seed: u64,
    rows: usize,
    cols: usize,
    max_steps: u32,
) -> Result<GameSpec, PoolTooSmall> {
    use crate::rng;
    let sampleable: Vec<&EntityDef> = pool
        .iter()
        .filter(|d| !matches!(d.behavior, Behavior::Projectile { .. }))
        .collect();
    if sampleable.len() < count {
        return Err(PoolTooSmall { have: sampleable.len(), need: count });
    }
    let friends: Vec<&EntityDef> =
        sampleable.iter().copied().filter(|d| d.is_collectible()).collect();
    let enemies: Vec<&EntityDef> =
        sampleable.iter().copied().filter(|d| !d.is_collectible()).collect();
    let need_friends = count / 2;
    let need_enemies = count - need_friends;
    if friends.len() < need_friends || enemies.len() < need_enemies {
        return Err(PoolTooSmall { have: sampleable.len(), need: count });
    }

    let mut r = rng::chacha(seed, rng::stream::SAMPLER);
    let mut pick = |src: &[&EntityDef], n: usize, r: &mut ChaCha12Rng| -> Vec<EntityDef> {
        let mut idx: Vec<usize> = (0..src.len()).collect();
        let mut out = Vec::with_capacity(n);
        for _ in 0..n {
            let j = r.gen_range(0..idx.len());
            out.push(src[idx.swap_remove(j)].clone());
        }
        out
    };
    let mut chosen = pick(&friends, need_friends, &mut r);
    chosen.extend(pick(&enemies, need_enemies, &mut r));

    // Carry projectile defs for any sampled shooter.
    let mut entities = chosen.clone();
    for def in &chosen {
        if let Behavior::Shooter { projectile, .. } = &def.behavior {
            if entities.iter().all(|e| &e.symbol != projectile) {
                if let Some(p) = pool.iter().find(|e| &e.symbol == projectile) {
                    entities.push(p.clone());
                }
            }
        }
    }

    // Distinct random cells for the avatar and each sampled entity.
    let mut cells: Vec<(usize, usize)> = Vec::with_capacity(count + 1);
    while cells.len() < count + 1 {
        let cell = (r.gen_range(0..rows), r.gen_range(0..cols));
        if !cells.contains(&cell) {
            cells.push(cell);
        }
    }
    let avatar_start = cells[0];
    let placements: Vec<(usize, usize, String)> = chosen
        .iter()
        .enumerate()
        .map(|(i, d)| (cells[i + 1].0, cells[i + 1].1, d.symbol.clone()))
        .collect();

    let spec = GameSpec {
        name: alloc::format!("fe-{seed}"),
        rows,
        cols,
        entities,
        avatar_start,
        placements,
        step_penalty: -0.01,
        max_steps,
        goal: GoalCondition::MeetAllFriends,
        goal_reward: 0.0,
    };
    debug_assert!(spec.validate().is_ok());
    Ok(spec)
}

#[cfg(test)]
mod tests;
