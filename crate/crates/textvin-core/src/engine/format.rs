//! Line-oriented game-spec document format.
//!
//! A document has four sections. `#` starts a comment; blank lines are
//! ignored outside `[layout]`.
//!
//! ```text
//! [meta]
//! name: freeway-1
//! grid: 16 16
//! max_steps: 120
//! step_penalty: -0.01
//! goal: reach-cell 0 8        # or: meet-all-friends | collect-and-exit
//! goal_reward: 1
//!
//! [entities]
//! # symbol behavior [params] speed
//! c horizontal-patrol right 1
//! g static 0
//!
//! [layout]
//! # exactly `rows` lines of `cols` characters; '.' empty, 'A' avatar
//!
//! [rewards]
//! # symbol reward [consume|exit|kill]...
//! c -1 kill
//! ```
//!
//! [`serialize_game_spec`] emits the canonical form: fixed section and
//! key order, no comments, entities in definition order. Parsing the
//! canonical form reproduces the spec exactly.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::{Behavior, Dir, EntityDef, GameSpec, GoalCondition, Interaction, SpecError};

fn malformed(line: usize, msg: impl Into<String>) -> SpecError {
    SpecError::Malformed { line, msg: msg.into() }
}

fn parse_dir(tok: &str, line: usize) -> Result<Dir, SpecError> {
    match tok {
        "up" => Ok(Dir::Up),
        "down" => Ok(Dir::Down),
        "left" => Ok(Dir::Left),
        "right" => Ok(Dir::Right),
        _ => Err(malformed(line, format!("unknown direction '{tok}'"))),
    }
}

fn parse_f64(tok: &str, line: usize, what: &str) -> Result<f64, SpecError> {
    tok.parse::<f64>().map_err(|_| malformed(line, format!("{what}: not a number '{tok}'")))
}

fn parse_usize(tok: &str, line: usize, what: &str) -> Result<usize, SpecError> {
    tok.parse::<usize>().map_err(|_| malformed(line, format!("{what}: not an integer '{tok}'")))
}

#[derive(PartialEq, Clone, Copy)]
enum Section {
    None,
    Meta,
    Entities,
    Layout,
    Rewards,
}

/// Parses a game-spec document and validates every invariant.
pub fn parse_game_spec(text: &str) -> Result<GameSpec, SpecError> {
    let mut section = Section::None;
    let mut name: Option<String> = None;
    let mut grid: Option<(usize, usize)> = None;
    let mut max_steps: Option<u32> = None;
    let mut step_penalty: f64 = 0.0;
    let mut goal: Option<GoalCondition> = None;
    let mut goal_reward: f64 = 0.0;
    let mut entities: Vec<EntityDef> = Vec::new();
    let mut layout_lines: Vec<(usize, String)> = Vec::new();
    let mut rewards: Vec<(usize, String, Interaction)> = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = match section {
            // Layout rows are taken verbatim (no inline comments).
            Section::Layout if !raw.trim().is_empty() && !raw.trim_start().starts_with('#') => raw,
            _ => {
                let no_comment = raw.split('#').next().unwrap_or("");
                let t = no_comment.trim();
                if t.is_empty() {
                    continue;
                }
                t
            }
        };
        if line.starts_with('[') {
            section = match line.trim() {
                "[meta]" => Section::Meta,
                "[entities]" => Section::Entities,
                "[layout]" => Section::Layout,
                "[rewards]" => Section::Rewards,
                other => return Err(malformed(lineno, format!("unknown section '{other}'"))),
            };
            continue;
        }
        match section {
            Section::None => return Err(malformed(lineno, "content before first section header")),
            Section::Meta => {
                let (key, value) = line
                    .split_once(':')
                    .ok_or_else(|| malformed(lineno, "expected 'key: value'"))?;
                let value = value.trim();
                match key.trim() {
                    "name" => name = Some(value.to_string()),
                    "grid" => {
                        let mut it = value.split_whitespace();
                        let r = parse_usize(
                            it.next().ok_or_else(|| malformed(lineno, "grid: missing rows"))?,
                            lineno,
                            "grid rows",
                        )?;
                        let c = parse_usize(
                            it.next().ok_or_else(|| malformed(lineno, "grid: missing cols"))?,
                            lineno,
                            "grid cols",
                        )?;
                        grid = Some((r, c));
                    }
                    "max_steps" => {
                        max_steps = Some(parse_usize(value, lineno, "max_steps")? as u32)
                    }
                    "step_penalty" => step_penalty = parse_f64(value, lineno, "step_penalty")?,
                    "goal_reward" => goal_reward = parse_f64(value, lineno, "goal_reward")?,
                    "goal" => {
                        let mut it = value.split_whitespace();
                        goal = Some(match it.next() {
                            Some("reach-cell") => {
                                let row = parse_usize(
                                    it.next()
                                        .ok_or_else(|| malformed(lineno, "reach-cell: missing row"))?,
                                    lineno,
                                    "goal row",
                                )?;
                                let col = parse_usize(
                                    it.next()
                                        .ok_or_else(|| malformed(lineno, "reach-cell: missing col"))?,
                                    lineno,
                                    "goal col",
                                )?;
                                GoalCondition::ReachCell { row, col }
                            }
                            Some("meet-all-friends") => GoalCondition::MeetAllFriends,
                            Some("collect-and-exit") => GoalCondition::CollectAndExit,
                            other => {
                                return Err(malformed(
                                    lineno,
                                    format!("unknown goal '{}'", other.unwrap_or("")),
                                ))
                            }
                        });
                    }
                    other => return Err(malformed(lineno, format!("unknown meta key '{other}'"))),
                }
            }
            Section::Entities => {
                let toks: Vec<&str> = line.split_whitespace().collect();
                if toks.len() < 3 {
                    return Err(malformed(lineno, "expected 'symbol behavior [params] speed'"));
                }
                let symbol = toks[0].to_string();
                let speed = parse_f64(toks[toks.len() - 1], lineno, "speed")?;
                let params = &toks[2..toks.len() - 1];
                let behavior = match (toks[1], params) {
                    ("static", []) => Behavior::Static,
                    ("horizontal-patrol", [d]) => {
                        Behavior::HorizontalPatrol { start: parse_dir(d, lineno)? }
                    }
                    ("vertical-patrol", [d]) => {
                        Behavior::VerticalPatrol { start: parse_dir(d, lineno)? }
                    }
                    ("random-walk", []) => Behavior::RandomWalk,
                    ("chaser", []) => Behavior::Chaser,
                    ("fleer", []) => Behavior::Fleer,
                    ("shooter", [d, period, proj]) => Behavior::Shooter {
                        dir: parse_dir(d, lineno)?,
                        period: parse_usize(period, lineno, "shooter period")? as u32,
                        projectile: proj.to_string(),
                    },
                    ("resource", []) => Behavior::Resource,
                    ("friend", []) => Behavior::Friend,
                    ("enemy", []) => Behavior::Enemy,
                    ("door", []) => Behavior::Door,
                    ("projectile", [d]) => Behavior::Projectile { dir: parse_dir(d, lineno)? },
                    (b, _) => {
                        return Err(malformed(
                            lineno,
                            format!("unknown behavior or wrong parameters for '{b}'"),
                        ))
                    }
                };
                entities.push(EntityDef {
                    symbol,
                    behavior,
                    speed,
                    interaction: Interaction::default(),
                });
            }
            Section::Layout => layout_lines.push((lineno, line.to_string())),
            Section::Rewards => {
                let toks: Vec<&str> = line.split_whitespace().collect();
                if toks.len() < 2 {
                    return Err(malformed(lineno, "expected 'symbol reward [flags]'"));
                }
                let mut inter = Interaction {
                    reward: parse_f64(toks[1], lineno, "reward")?,
                    ..Interaction::default()
                };
                for flag in &toks[2..] {
                    match *flag {
                        "consume" => inter.consume = true,
                        "exit" => inter.terminate = true,
                        "kill" => {
                            inter.kill = true;
                            inter.terminate = true;
                        }
                        other => {
                            return Err(malformed(lineno, format!("unknown flag '{other}'")))
                        }
                    }
                }
                rewards.push((lineno, toks[0].to_string(), inter));
            }
        }
    }

    let name = name.ok_or_else(|| malformed(0, "missing meta key 'name'"))?;
    let (rows, cols) = grid.ok_or_else(|| malformed(0, "missing meta key 'grid'"))?;
    let max_steps = max_steps.ok_or_else(|| malformed(0, "missing meta key 'max_steps'"))?;
    let goal = goal.ok_or_else(|| malformed(0, "missing meta key 'goal'"))?;

    for (lineno, sym, inter) in rewards {
        match entities.iter_mut().find(|e| e.symbol == sym) {
            Some(def) => def.interaction = inter,
            None => return Err(malformed(lineno, format!("rewards for unknown symbol '{sym}'"))),
        }
    }

    if layout_lines.len() != rows {
        return Err(SpecError::Invalid {
            what: "layout".to_string(),
            msg: format!("expected {rows} layout rows, found {}", layout_lines.len()),
        });
    }
    let mut avatar: Option<(usize, usize)> = None;
    let mut placements: Vec<(usize, usize, String)> = Vec::new();
    for (r, (lineno, row)) in layout_lines.iter().enumerate() {
        let chars: Vec<char> = row.chars().collect();
        if chars.len() != cols {
            return Err(malformed(
                *lineno,
                format!("layout row has {} cells, expected {cols}", chars.len()),
            ));
        }
        for (c, ch) in chars.iter().enumerate() {
            match ch {
                '.' => {}
                'A' => {
                    if avatar.is_some() {
                        return Err(SpecError::Invalid {
                            what: "layout".to_string(),
                            msg: format!("second avatar at line {lineno}"),
                        });
                    }
                    avatar = Some((r, c));
                }
                _ => {
                    let sym = ch.to_string();
                    if !entities.iter().any(|e| e.symbol == sym) {
                        return Err(SpecError::Invalid {
                            what: "layout".to_string(),
                            msg: format!("symbol '{sym}' at line {lineno} not defined in entities"),
                        });
                    }
                    placements.push((r, c, sym));
                }
            }
        }
    }
    let avatar_start = avatar.ok_or_else(|| SpecError::Invalid {
        what: "layout".to_string(),
        msg: "no avatar 'A' in layout".to_string(),
    })?;

    let spec = GameSpec {
        name,
        rows,
        cols,
        entities,
        avatar_start,
        placements,
        step_penalty,
        max_steps,
        goal,
        goal_reward,
    };
    spec.validate()?;
    Ok(spec)
}

/// Emits the canonical document form of a spec.
pub fn serialize_game_spec(spec: &GameSpec) -> String {
    let mut out = String::new();
    out.push_str("[meta]\n");
    out.push_str(&format!("name: {}\n", spec.name));
    out.push_str(&format!("grid: {} {}\n", spec.rows, spec.cols));
    out.push_str(&format!("max_steps: {}\n", spec.max_steps));
    out.push_str(&format!("step_penalty: {}\n", spec.step_penalty));
    match spec.goal {
        GoalCondition::ReachCell { row, col } => {
            out.push_str(&format!("goal: reach-cell {row} {col}\n"))
        }
        GoalCondition::MeetAllFriends => out.push_str("goal: meet-all-friends\n"),
        GoalCondition::CollectAndExit => out.push_str("goal: collect-and-exit\n"),
    }
    out.push_str(&format!("goal_reward: {}\n", spec.goal_reward));

    out.push_str("\n[entities]\n");
    for def in &spec.entities {
        let behavior = match &def.behavior {
            Behavior::Static => "static".to_string(),
            Behavior::HorizontalPatrol { start } => format!("horizontal-patrol {}", start.name()),
            Behavior::VerticalPatrol { start } => format!("vertical-patrol {}", start.name()),
            Behavior::RandomWalk => "random-walk".to_string(),
            Behavior::Chaser => "chaser".to_string(),
            Behavior::Fleer => "fleer".to_string(),
            Behavior::Shooter { dir, period, projectile } => {
                format!("shooter {} {} {}", dir.name(), period, projectile)
            }
            Behavior::Resource => "resource".to_string(),
            Behavior::Friend => "friend".to_string(),
            Behavior::Enemy => "enemy".to_string(),
            Behavior::Door => "door".to_string(),
            Behavior::Projectile { dir } => format!("projectile {}", dir.name()),
        };
        out.push_str(&format!("{} {} {}\n", def.symbol, behavior, def.speed));
    }

    out.push_str("\n[layout]\n");
    let mut grid = alloc::vec![alloc::vec!['.'; spec.cols]; spec.rows];
    for (r, c, sym) in &spec.placements {
        let ch = sym.chars().next().unwrap_or('?');
        grid[*r][*c] = ch;
    }
    grid[spec.avatar_start.0][spec.avatar_start.1] = 'A';
    for row in &grid {
        out.extend(row.iter());
        out.push('\n');
    }

    out.push_str("\n[rewards]\n");
    for def in &spec.entities {
        let mut line = format!("{} {}", def.symbol, def.interaction.reward);
        if def.interaction.consume {
            line.push_str(" consume");
        }
        if def.interaction.kill {
            line.push_str(" kill");
        } else if def.interaction.terminate {
            line.push_str(" exit");
        }
        out.push_str(&line);
        out.push('\n');
    }
    out
}
