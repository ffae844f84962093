use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::json;
use speh_core::clan::{
    clan_hasse_with, enumerate_clans, order_agreement_with, whittaker_chain, whittaker_chain_full,
    Clan, MoveSet, CLAN_MAX_SIZE,
};
use speh_core::dot::to_dot;
use speh_core::fixture::{self, Fixture, FixtureEdge, FixtureNode};
use speh_core::perm::{Involution, Permutation};
use speh_core::poset::{edelman_label, el_check, involution_hasse, symmetric_hasse, NodeKey, RankedHasse};
use speh_core::signs::{boundary_matrices, solve_signs, verify_complex, SignAssignment};
use speh_core::speh::{euler_check_with, standard_label, theta_fixed, KLTable, MultiplicityConvention};
use speh_core::Error;

use crate::output::{to_json, write_file, CommandResult};
use crate::{Convention, EnumKind, ExportCommand, PosetKind, SizeArgs, VerifyTarget};

const MAX_ENUM_PERMS: usize = 8;
const MAX_ENUM_INVOLUTIONS: usize = 10;
const MAX_SYM: usize = 5;
const MAX_INV: usize = 6;
const MAX_DIAMOND_SYM: usize = 6;
const MAX_DIAMOND_INV: usize = 7;
const MAX_AGREEMENT: usize = 6;
const MAX_EULER: usize = 5;
const MAX_KL_EXPORT: usize = 6;

fn need(value: Option<usize>, flag: &str) -> Result<usize, CommandResult> {
    value.ok_or_else(|| CommandResult::error(format!("--{flag} is required")))
}

fn in_range(value: usize, lo: usize, hi: usize, what: &str) -> Result<usize, CommandResult> {
    if (lo..=hi).contains(&value) {
        Ok(value)
    } else {
        Err(CommandResult::error(format!("{what} = {value} is outside {lo}..={hi}")))
    }
}

fn signature(size: SizeArgs) -> Result<(usize, usize), CommandResult> {
    let (p, q) = (need(size.p, "p")?, need(size.q, "q")?);
    in_range(p + q, 1, CLAN_MAX_SIZE, "p + q")?;
    Ok((p, q))
}

fn core_error(e: Error) -> CommandResult {
    CommandResult::error(e)
}

fn unwrap(r: Result<CommandResult, CommandResult>) -> CommandResult {
    r.unwrap_or_else(|e| e)
}

pub fn enumerate(kind: EnumKind, size: SizeArgs) -> CommandResult {
    unwrap((|| {
        let items: Vec<serde_json::Value> = match kind {
            EnumKind::Perms => {
                let n = in_range(need(size.n, "n")?, 1, MAX_ENUM_PERMS, "n")?;
                let mut all: Vec<Permutation> = Permutation::all(n).collect();
                all.sort_by_key(|s| (s.inv_count(), s.clone()));
                all.iter()
                    .map(|s| json!({"perm": s, "length": s.inv_count()}))
                    .collect()
            }
            EnumKind::Involutions => {
                let n = in_range(need(size.n, "n")?, 1, MAX_ENUM_INVOLUTIONS, "n")?;
                let mut all = Involution::all(n);
                all.sort_by_key(|s| (s.length_i(), s.clone()));
                all.iter()
                    .map(|s| {
                        json!({
                            "involution": s,
                            "inv": s.perm().inv_count(),
                            "exc": s.perm().exc_count(),
                            "length": s.length_i(),
                        })
                    })
                    .collect()
            }
            EnumKind::Clans => {
                let (p, q) = signature(size)?;
                enumerate_clans(p, q)
                    .iter()
                    .map(|c| json!({"clan": c, "rank": c.rank(), "involution": c.involution()}))
                    .collect()
            }
        };
        Ok(CommandResult::ok(json!({"count": items.len(), "items": items})))
    })())
}

pub fn verify(
    target: VerifyTarget,
    poset: PosetKind,
    size: SizeArgs,
    file: Option<PathBuf>,
    convention: Option<Convention>,
    local: bool,
) -> CommandResult {
    unwrap((|| match target {
        VerifyTarget::Diamonds => match poset {
            PosetKind::Sym => {
                let n = in_range(need(size.n, "n")?, 1, MAX_DIAMOND_SYM, "n")?;
                Ok(diamonds(&symmetric_hasse(n).map_err(core_error)?))
            }
            PosetKind::Inv => {
                let n = in_range(need(size.n, "n")?, 1, MAX_DIAMOND_INV, "n")?;
                Ok(diamonds(&involution_hasse(n).map_err(core_error)?))
            }
            PosetKind::Clans => {
                let (p, q) = signature(size)?;
                Ok(diamonds(&clan_hasse_with(p, q, moves(local)).map_err(core_error)?))
            }
        },
        VerifyTarget::El => {
            let n = in_range(need(size.n, "n")?, 1, MAX_SYM, "n")?;
            let h = match poset {
                PosetKind::Sym => symmetric_hasse(n)
                    .and_then(|h| h.with_labels(|a, b| edelman_label(a, b)))
                    .map_err(core_error)?,
                _ => return Err(CommandResult::error("el is defined with Edelman labels on --poset sym")),
            };
            let r = el_check(&h, h.labels().expect("labelled"));
            let first = r.failures.first().map(|f| {
                format!("[{}, {}]: {}", h.key(f.bottom), h.key(f.top), f.reason)
            });
            Ok(CommandResult::checked(
                r.passed(),
                json!({
                    "intervals_checked": r.intervals_checked,
                    "failures": r.failures.len(),
                    "first_counterexample": first,
                }),
                first.into_iter().collect(),
            ))
        }
        VerifyTarget::Grading => {
            let built = match poset {
                PosetKind::Sym => {
                    let n = in_range(need(size.n, "n")?, 1, MAX_DIAMOND_SYM, "n")?;
                    symmetric_hasse(n).map(|h| summary(&h))
                }
                PosetKind::Inv => {
                    let n = in_range(need(size.n, "n")?, 1, MAX_DIAMOND_INV, "n")?;
                    involution_hasse(n).map(|h| summary(&h))
                }
                PosetKind::Clans => {
                    let (p, q) = signature(size)?;
                    clan_hasse_with(p, q, moves(local)).map(|h| summary(&h))
                }
            };
            Ok(match built {
                Ok(payload) => CommandResult::ok(payload),
                Err(e @ Error::GradingViolation { .. }) => {
                    CommandResult::violation(json!({"graded": false}), vec![e.to_string()])
                }
                Err(e) => CommandResult::error(e),
            })
        }
        VerifyTarget::OrderAgreement => {
            let (p, q) = signature(size)?;
            in_range(p + q, 1, MAX_AGREEMENT, "p + q")?;
            let r = order_agreement_with(p, q, moves(local)).map_err(core_error)?;
            let diagnostics = r
                .not_bruhat
                .iter()
                .take(1)
                .map(|(a, b)| format!("clans {a} ≤ {b} but projections are not Bruhat-related"))
                .chain(
                    r.missing
                        .iter()
                        .take(1)
                        .map(|(a, b)| format!("{a} ≤ {b} in Bruhat order but no clan pair induces it")),
                )
                .collect();
            Ok(CommandResult::checked(
                r.passed(),
                json!({
                    "clans": r.clans,
                    "involutions": r.involutions,
                    "comparable_pairs": r.comparable_pairs,
                    "not_bruhat": r.not_bruhat.len(),
                    "missing": r.missing.len(),
                    "first_counterexample": r.not_bruhat.first().or(r.missing.first()),
                }),
                diagnostics,
            ))
        }
        VerifyTarget::Euler => {
            let n = in_range(need(size.n, "n")?, 1, MAX_EULER, "n")?;
            let conv = match convention {
                Some(Convention::Direct) => MultiplicityConvention::Direct,
                Some(Convention::Twisted) => MultiplicityConvention::LongestTwisted,
                None => speh_core::speh::CALIBRATED,
            };
            let t = KLTable::new(n).map_err(core_error)?;
            let (passed, residual) = euler_check_with(n, &t, conv);
            let first = residual.iter().next().map(|(k, c)| format!("residual coefficient {c} on {k}"));
            Ok(CommandResult::checked(
                passed,
                json!({"n": n, "convention": conv, "residual": residual}),
                first.into_iter().collect(),
            ))
        }
        VerifyTarget::Fixture => {
            let path = file.ok_or_else(|| CommandResult::error("--file is required"))?;
            let f = load_fixture(&path)?;
            let r = fixture::verify_fixture(&f).map_err(core_error)?;
            let diagnostics = r
                .parity_violations
                .first()
                .map(|d| format!("diamond {} < {}, {} < {} has even sign parity", d[0], d[1], d[2], d[3]))
                .into_iter()
                .collect();
            Ok(CommandResult::checked(r.passed(), &r, diagnostics))
        }
    })())
}

fn moves(local: bool) -> MoveSet {
    if local {
        MoveSet::Local
    } else {
        MoveSet::Full
    }
}

fn summary<K: NodeKey>(h: &RankedHasse<K>) -> serde_json::Value {
    json!({
        "graded": true,
        "nodes": h.len(),
        "edges": h.edges().len(),
        "rank_sizes": h.rank_sizes(),
    })
}

fn diamonds<K: NodeKey>(h: &RankedHasse<K>) -> CommandResult {
    let r = h.find_diamonds();
    let first = r.violations.first().map(|v| {
        let mids: Vec<String> = v.midpoints.iter().map(|&m| h.key(m).to_string()).collect();
        json!({"bottom": h.key(v.bottom).to_string(), "top": h.key(v.top).to_string(), "midpoints": mids})
    });
    let diagnostics = first
        .as_ref()
        .map(|f| format!("rank-2 interval with {} midpoints: {f}", f["midpoints"].as_array().map_or(0, Vec::len)))
        .into_iter()
        .collect();
    CommandResult::checked(
        r.is_clean(),
        json!({
            "nodes": h.len(),
            "diamonds": r.diamonds.len(),
            "violations": r.violations.len(),
            "first_counterexample": first,
        }),
        diagnostics,
    )
}

/// Reads a fixture from disk, falling back to the bundled copy of the same
/// file name.
fn load_fixture(path: &Path) -> Result<Fixture, CommandResult> {
    if path.exists() {
        return Fixture::load(path).map_err(core_error);
    }
    let bundled = match path.file_name().and_then(|s| s.to_str()) {
        Some("gl6.json") => fixture::GL6_JSON,
        Some("gl8.json") => fixture::GL8_JSON,
        Some("u21.json") => fixture::U21_JSON,
        _ => return Err(CommandResult::error(format!("{}: no such file", path.display()))),
    };
    Fixture::from_json(bundled).map_err(core_error)
}

#[derive(Serialize)]
struct SolvePayload {
    poset: &'static str,
    n: usize,
    degrees: Vec<usize>,
    d_squared_zero: bool,
    negative_edges: usize,
    edges: Vec<FixtureEdge>,
}

fn signed_fixture<K: NodeKey>(h: &RankedHasse<K>, a: &SignAssignment, name: String) -> Fixture {
    Fixture {
        name: Some(name),
        nodes: (0..h.len())
            .map(|v| FixtureNode {
                key: h.key(v).to_string(),
                rank: h.rank(v),
            })
            .collect(),
        edges: a
            .to_edges(h)
            .into_iter()
            .map(|e| FixtureEdge {
                src: e.src,
                dst: e.dst,
                sign: Some(e.sign),
            })
            .collect(),
    }
}

fn solve_on<K: NodeKey>(h: &RankedHasse<K>, poset: &'static str, n: usize, out: Option<PathBuf>) -> CommandResult {
    let a = match solve_signs(h) {
        Ok(a) => a,
        Err(Error::Unsolvable(cert)) => {
            return CommandResult::violation(
                json!({"poset": poset, "n": n, "certificate": cert}),
                vec![format!("no sign assignment; {} diamonds sum to 0 = 1", cert.len())],
            )
        }
        Err(e) => return CommandResult::error(e),
    };
    let complex = match boundary_matrices(h, &a) {
        Ok(c) => c,
        Err(e) => return CommandResult::error(e),
    };
    let fixture = signed_fixture(h, &a, format!("{poset} n = {n}"));
    if let Some(path) = &out {
        if let Err(e) = write_file(path, &to_json(&fixture)) {
            return e;
        }
    }
    let verified = verify_complex(&complex);
    let payload = SolvePayload {
        poset,
        n,
        degrees: complex.degrees.clone(),
        d_squared_zero: verified,
        negative_edges: a.count_negative(),
        edges: fixture.edges,
    };
    let diagnostics = complex
        .nonzero_squares()
        .iter()
        .map(|d| format!("D_{} D_{d} is nonzero", d + 1))
        .collect();
    CommandResult::checked(verified, payload, diagnostics)
}

pub fn solve(poset: PosetKind, n: usize, out: Option<PathBuf>) -> CommandResult {
    unwrap((|| match poset {
        PosetKind::Sym => {
            in_range(n, 1, MAX_SYM, "n")?;
            Ok(solve_on(&symmetric_hasse(n).map_err(core_error)?, "sym", n, out))
        }
        PosetKind::Inv => {
            in_range(n, 1, MAX_INV, "n")?;
            Ok(solve_on(&involution_hasse(n).map_err(core_error)?, "inv", n, out))
        }
        PosetKind::Clans => Err(CommandResult::error("solve supports --poset sym or inv")),
    })())
}

/// Payload as JSON, or written to `out` with a short receipt.
fn deliver(payload: serde_json::Value, out: Option<PathBuf>) -> CommandResult {
    match out {
        Some(path) => match write_file(&path, &to_json(&payload)) {
            Ok(()) => CommandResult::ok(json!({"written": path})),
            Err(e) => e,
        },
        None => CommandResult::ok(payload),
    }
}

fn dot_for<K: NodeKey>(h: &RankedHasse<K>, signs: bool, name: &str) -> Result<String, CommandResult> {
    let a = if signs {
        Some(solve_signs(h).map_err(core_error)?)
    } else {
        None
    };
    Ok(to_dot(h, a.as_ref(), name))
}

pub fn export(what: ExportCommand) -> CommandResult {
    unwrap((|| match what {
        ExportCommand::HasseDot {
            poset,
            n,
            clans,
            signs,
            dot,
            out,
        } => {
            let (name, text) = match (clans, poset) {
                (Some(pq), _) => {
                    let (p, q) = signature(SizeArgs {
                        n: None,
                        p: Some(pq[0]),
                        q: Some(pq[1]),
                    })?;
                    let h: RankedHasse<Clan> = clan_hasse_with(p, q, MoveSet::Full).map_err(core_error)?;
                    let name = format!("clans_{p}_{q}");
                    let text = dot_for(&h, signs, &name)?;
                    (name, text)
                }
                (None, PosetKind::Sym) => {
                    let n = in_range(need(n, "n")?, 1, MAX_SYM, "n")?;
                    let name = format!("S{n}");
                    (name.clone(), dot_for(&symmetric_hasse(n).map_err(core_error)?, signs, &name)?)
                }
                (None, PosetKind::Inv) => {
                    let n = in_range(need(n, "n")?, 1, MAX_INV, "n")?;
                    let name = format!("I{n}");
                    (name.clone(), dot_for(&involution_hasse(n).map_err(core_error)?, signs, &name)?)
                }
                (None, PosetKind::Clans) => return Err(CommandResult::error("--clans P Q is required")),
            };
            if let Some(path) = &out {
                write_file(path, &text)?;
                return Ok(CommandResult::ok(json!({"name": name, "written": path})));
            }
            let mut result = CommandResult::ok(json!({"name": name, "dot": text}));
            if dot {
                result.raw = Some(text);
            }
            Ok(result)
        }
        ExportCommand::Labels { p, n, perm, out } => {
            let s: Permutation = perm.parse().map_err(core_error)?;
            if s.len() != n {
                return Err(CommandResult::error(format!("{s} has degree {}, not n = {n}", s.len())));
            }
            let label = standard_label(p, &s).map_err(core_error)?;
            Ok(deliver(
                json!({
                    "perm": s,
                    "p": p,
                    "n": n,
                    "label": label.to_string(),
                    "factors": label.factors,
                    "theta_label": label.theta().to_string(),
                    "theta_fixed": theta_fixed(&s),
                }),
                out,
            ))
        }
        ExportCommand::Chain { p, q, full, out } => {
            in_range(p + q, 1, CLAN_MAX_SIZE, "p + q")?;
            let chain = if full {
                whittaker_chain_full(p, q)
            } else {
                whittaker_chain(p, q)
            }
            .map_err(core_error)?;
            let ranks: Vec<usize> = chain.iter().map(Clan::rank).collect();
            Ok(deliver(json!({"p": p, "q": q, "length": chain.len(), "chain": chain, "ranks": ranks}), out))
        }
        ExportCommand::Kl { n, out } => {
            in_range(n, 1, MAX_KL_EXPORT, "n")?;
            let t = KLTable::new(n).map_err(core_error)?;
            let entries: Vec<_> = t.dump().into_iter().filter(|e| e.coeffs != [1]).collect();
            Ok(deliver(
                json!({"n": n, "note": "pairs x ≤ w with P = 1 are omitted", "entries": entries}),
                out,
            ))
        }
    })())
}
