use std::io::{Read, Write};
use std::path::Path;

use monosim::certify::{certify_dual_2d, certify_monotone_2d, refute_placement, refute_placement_3d_compact};
use monosim::counterexamples::{validate_structure, FamilyId};
use monosim::embeddings::{
    canonical_bases, dual_to_primal, embed_rank, embed_rank_dual, primal_to_dual, tilt_directions, verify_monotone,
    verify_parallel, Verdict,
};
use monosim::render::{render_monotone, render_parallel};
use monosim::scalar::parse_scalar;
use monosim::search::{search_embedding_of_kind, EmbeddingKind};
use monosim::{json, Error, ExactField, Instance, MonotoneEmbedding, ParallelEmbedding, Scalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::{Command, KindArg, Output};

pub enum Failure {
    Usage(String),
    Negative(String),
    Degenerate(String),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Negative(_) => 2,
            Failure::Degenerate(_) => 3,
        }
    }

    pub fn message(&self) -> String {
        match self {
            Failure::Usage(m) => format!("error: {m}"),
            Failure::Negative(m) => m.clone(),
            Failure::Degenerate(m) => format!("degenerate input: {m}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::CoincidentIntersection(..)
            | Error::DegenerateProjection(_)
            | Error::DegeneratePlacement(_)
            | Error::VerticalDirection(_) => Failure::Degenerate(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn read_input(path: Option<&Path>) -> Result<String, Failure> {
    match path {
        Some(p) => std::fs::read_to_string(p).map_err(|e| Failure::Usage(format!("{}: {e}", p.display()))),
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

fn emit(output: &Output, text: &str) -> Outcome {
    match &output.out {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::Usage(format!("{}: {e}", p.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
            Ok(())
        }
    }
}

fn load_instance(path: Option<&Path>) -> Result<Instance, Failure> {
    Ok(Instance::from_json(&read_input(path)?)?)
}

enum EmbeddingFile {
    Monotone(MonotoneEmbedding, Option<Instance>),
    Parallel(ParallelEmbedding, Option<Vec<bool>>, Option<Instance>),
}

impl EmbeddingFile {
    fn parse(text: &str) -> Result<Self, Failure> {
        let v: Value = serde_json::from_str(text).map_err(|e| Failure::Usage(format!("parse error: {e}")))?;
        if v.get("points").is_some() {
            let (emb, inst) = MonotoneEmbedding::from_json(text)?;
            Ok(EmbeddingFile::Monotone(emb, inst))
        } else if v.get("hyperplanes").is_some() {
            let (emb, flags, inst) = ParallelEmbedding::from_json(text)?;
            Ok(EmbeddingFile::Parallel(emb, flags, inst))
        } else {
            Err(Failure::Usage("not an embedding file: expected \"points\" or \"hyperplanes\"".into()))
        }
    }
}

fn require_instance(carried: Option<Instance>, path: Option<&Path>) -> Result<Instance, Failure> {
    match path {
        Some(p) => load_instance(Some(p)),
        None => carried.ok_or_else(|| Failure::Usage("no instance: pass --instance or embed one in the file".into())),
    }
}

/// The instance a parallel file realizes once its reversal flags are applied.
fn flagged(inst: &Instance, flags: Option<&[bool]>) -> Instance {
    match flags {
        Some(f) if f.iter().any(|&x| x) => {
            let mut out = Instance::new(inst.labels.clone(), inst.reversed_by(f));
            out.label_names = inst.label_names.clone();
            out
        }
        _ => inst.clone(),
    }
}

fn verdict_outcome(v: Verdict) -> Outcome {
    match v {
        Verdict::Verified => {
            println!("VERIFIED");
            Ok(())
        }
        Verdict::Failed(why) => {
            println!("NOT VERIFIED");
            Err(Failure::Negative(why))
        }
    }
}

fn kind_of(arg: Option<KindArg>, inst: &Instance) -> EmbeddingKind {
    match arg {
        Some(KindArg::Monotone) => EmbeddingKind::Monotone,
        Some(KindArg::Parallel) => EmbeddingKind::Parallel,
        None => EmbeddingKind::for_instance(inst),
    }
}

pub fn run(command: Command) -> Outcome {
    match command {
        Command::Gen { family, d, output } => {
            let inst = FamilyId::parse(&family, d)?.generate()?;
            emit(&output, &inst.to_json()?)
        }
        Command::Embed { input, d, dual, output } => {
            let inst = load_instance(input.as_deref())?;
            let text = if dual {
                embed_rank_dual::<Scalar>(&inst, d)?.to_json(None, Some(&inst))?
            } else {
                embed_rank::<Scalar>(&inst, d)?.to_json(Some(&inst))?
            };
            emit(&output, &text)
        }
        Command::Dualize { input, output } => match EmbeddingFile::parse(&read_input(input.as_deref())?)? {
            EmbeddingFile::Parallel(emb, flags, inst) => {
                let inst = inst.map(|i| flagged(&i, flags.as_deref()));
                emit(&output, &dual_to_primal(&emb).to_json(inst.as_ref())?)
            }
            EmbeddingFile::Monotone(..) => Err(Failure::Usage("dualize expects a parallel embedding file".into())),
        },
        Command::Primalize { input, instance, output } => match EmbeddingFile::parse(&read_input(input.as_deref())?)? {
            EmbeddingFile::Monotone(emb, carried) => {
                let inst = require_instance(carried, instance.as_deref())?;
                let tilted = tilt_directions(&emb, &inst)?;
                let (par, flags) = primal_to_dual(&tilted)?;
                let reversed: Vec<String> =
                    flags.iter().enumerate().filter(|(_, &f)| f).map(|(j, _)| (j + 1).to_string()).collect();
                eprintln!(
                    "reversed permutations: {}",
                    if reversed.is_empty() { "none".to_string() } else { reversed.join(", ") }
                );
                emit(&output, &par.to_json(Some(&flags), Some(&inst))?)
            }
            EmbeddingFile::Parallel(..) => Err(Failure::Usage("primalize expects a monotone embedding file".into())),
        },
        Command::Verify { input, embedding, instance } => {
            let (emb_text, inst_path) = match &embedding {
                Some(e) => (read_input(Some(e))?, Some(instance.clone().map_or(input.clone(), Some))),
                None => (read_input(input.as_deref())?, None),
            };
            let explicit = |carried: Option<Instance>| -> Result<Instance, Failure> {
                match &inst_path {
                    Some(p) => load_instance(p.as_deref()),
                    None => require_instance(carried, instance.as_deref()),
                }
            };
            match EmbeddingFile::parse(&emb_text)? {
                EmbeddingFile::Monotone(emb, carried) => verdict_outcome(verify_monotone(&emb, &explicit(carried)?)?),
                EmbeddingFile::Parallel(emb, flags, carried) => {
                    let inst = flagged(&explicit(carried)?, flags.as_deref());
                    verdict_outcome(verify_parallel(&emb, &inst)?)
                }
            }
        }
        Command::Certify { input, kind, samples, seed, output } => {
            let inst = load_instance(input.as_deref())?;
            certify(&inst, kind_of(kind, &inst), samples, seed, &output)
        }
        Command::Refute { input, at, output } => {
            let inst = load_instance(input.as_deref())?;
            refute(&inst, &at, &output)
        }
        Command::Search { input, d, budget, seed, kind, output } => {
            let inst = load_instance(input.as_deref())?;
            let d = d
                .or(inst.dimension)
                .ok_or_else(|| Failure::Usage("no dimension: pass --d".into()))?;
            let report = search_embedding_of_kind::<Scalar>(&inst, d, budget, seed, kind_of(kind, &inst))?;
            emit(&output, &report.to_json(&inst)?)?;
            match report.found() {
                Some(_) => Ok(()),
                None => Err(Failure::Negative(format!("no embedding found in {budget} samples"))),
            }
        }
        Command::Render { input, instance, output } => {
            let svg = match EmbeddingFile::parse(&read_input(input.as_deref())?)? {
                EmbeddingFile::Monotone(emb, carried) => {
                    if emb.dimension != 2 {
                        return Err(Error::RenderDimension(emb.dimension).into());
                    }
                    render_monotone(&emb, &require_instance(carried, instance.as_deref())?)?
                }
                EmbeddingFile::Parallel(emb, flags, carried) => {
                    let inst = match instance {
                        Some(p) => Some(load_instance(Some(&p))?),
                        None => carried,
                    };
                    let inst = inst.map(|i| flagged(&i, flags.as_deref()));
                    render_parallel(&emb, inst.as_ref())?
                }
            };
            emit(&output, &svg)
        }
    }
}

fn layout(v: &Value) -> Result<String, Failure> {
    Ok(json::to_layout(v)?)
}


fn finish_certificate(doc: Value, refuted: bool, output: &Output) -> Outcome {
    emit(output, &layout(&doc)?)?;
    if refuted {
        eprintln!("NOT-EMBEDDABLE");
        Ok(())
    } else {
        Err(Failure::Negative("UNDECIDED: no refutation found".into()))
    }
}

fn random_candidate(rng: &mut ChaCha8Rng, dim: usize) -> Vec<Scalar> {
    (0..dim).map(|_| Scalar::from_frac(rng.gen_range(-48..=48), rng.gen_range(1..=16))).collect()
}

fn certify(inst: &Instance, kind: EmbeddingKind, samples: usize, seed: u64, output: &Output) -> Outcome {
    let family = FamilyId::of_instance(inst);
    let d = inst.dimension.or(family.map(|f| f.dimension())).unwrap_or(2);
    if d == 2 {
        let (refuted, certificate) = match kind {
            EmbeddingKind::Parallel => {
                let c = certify_dual_2d(inst)?;
                (c.refuted, serde_json::to_value(&c).expect("certificate serializes"))
            }
            EmbeddingKind::Monotone => {
                let c = certify_monotone_2d(inst)?;
                (c.not_embeddable, serde_json::to_value(&c).expect("certificate serializes"))
            }
        };
        let doc = json!({
            "verdict": if refuted { "NOT-EMBEDDABLE" } else { "UNDECIDED" },
            "kind": kind.name(),
            "dimension": 2,
            "method": "weak-order enumeration",
            "certificate": certificate,
        });
        return finish_certificate(doc, refuted, output);
    }

    let Some(family) = family else {
        return Err(Failure::Negative(format!("UNDECIDED: no certifier for instances without a family in d={d}")));
    };
    let structure = validate_structure(inst)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = Vec::with_capacity(samples);
    if structure {
        match family {
            FamilyId::Dual3D | FamilyId::Primal3D => {
                for _ in 0..samples {
                    let c = random_candidate(&mut rng, 2);
                    let violated = refute_placement_3d_compact(&[c[0].clone(), c[1].clone()]);
                    let at: Vec<String> = c.iter().map(|x| x.to_string()).collect();
                    checks.push(json!({ "at": at, "violated": violated }));
                }
            }
            FamilyId::DualGeneral(_) | FamilyId::PrimalGeneral(_) => {
                let bases = canonical_bases::<Scalar>(d);
                while checks.len() < samples {
                    let c = random_candidate(&mut rng, d - 1);
                    if bases.contains(&c) {
                        continue;
                    }
                    let w = refute_placement(inst, &bases, &c)?;
                    let v: Value = serde_json::from_str(&w.to_json()?).expect("witness JSON");
                    let at: Vec<String> = c.iter().map(|x| x.to_string()).collect();
                    checks.push(json!({ "at": at, "witness": v }));
                }
            }
            FamilyId::Dual2D | FamilyId::Primal2D => {}
        }
    }
    let refuted = structure && checks.len() == samples;
    let doc = json!({
        "verdict": if refuted { "NOT-EMBEDDABLE" } else { "UNDECIDED" },
        "kind": kind.name(),
        "dimension": d,
        "method": "group structure and placement refutation",
        "family": family.name(),
        "structure_valid": structure,
        "seed": seed,
        "spot_checks": checks,
    });
    finish_certificate(doc, refuted, output)
}

fn refute(inst: &Instance, at: &str, output: &Output) -> Outcome {
    let candidate: Vec<Scalar> = at.split(',').map(parse_scalar).collect::<Result<_, _>>()?;
    let family = FamilyId::of_instance(inst)
        .ok_or_else(|| Failure::Usage("refute needs an instance from the dual3d, primal3d or general families".into()))?;
    let text = match family {
        FamilyId::Dual3D | FamilyId::Primal3D => {
            let [x, y] = <[Scalar; 2]>::try_from(candidate.clone())
                .map_err(|_| Error::DimensionMismatch { expected: 2, found: candidate.len() })?;
            let violated = refute_placement_3d_compact(&[x, y]);
            let at: Vec<String> = candidate.iter().map(|x| x.to_string()).collect();
            layout(&json!({ "at": at, "bases": [["0", "0"], ["1", "0"], ["0", "1"]], "violated": violated }))?
        }
        FamilyId::DualGeneral(d) | FamilyId::PrimalGeneral(d) => {
            refute_placement(inst, &canonical_bases::<Scalar>(d), &candidate)?.to_json()?
        }
        FamilyId::Dual2D | FamilyId::Primal2D => {
            return Err(Failure::Usage("planar families are refuted by `certify`".into()))
        }
    };
    emit(output, &text)
}
