//! The end-to-end pipeline and its report.

use std::fmt::Write as _;
use std::time::Instant;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::analysis::{
    detect_catastrophic, roundtrip_verify, verify_non_recursive, CatastrophicVerdict, CycleWitness,
    RecursionVerdict, StateDiagramEdge, DEFAULT_MEMORY_BOUND,
};
use crate::circuit::{synthesize_circuit, Gate};
use crate::code::ConvolutionalCode;
use crate::error::Result;
use crate::pauli::PauliOperator;
use crate::shorten::{shorten, ShorteningReport, ShorteningStep};
use crate::synth::{synthesize_encoder, EncoderRow, MemoryTable, Synthesis};
use crate::tableau::{complete_to_clifford, CliffordTableau, FrameLayout};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PipelineOptions {
    /// Seeds row addition and, when set, the tableau completion. Without it
    /// the completion is canonical and row addition uses seed 0.
    pub seed: Option<u64>,
    pub skip_shorten: bool,
    pub max_memory: usize,
    /// Record wall-clock time per stage. Off by default so that reports are
    /// byte-for-byte reproducible.
    pub timing: bool,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions {
            seed: None,
            skip_shorten: false,
            max_memory: DEFAULT_MEMORY_BOUND,
            timing: false,
        }
    }
}

#[derive(Clone, Debug)]
pub struct PipelineReport {
    pub input: ConvolutionalCode,
    pub shortening: Option<ShorteningReport>,
    /// The code actually synthesized (after shortening, if run).
    pub code: ConvolutionalCode,
    pub synthesis: Synthesis,
    pub layout: FrameLayout,
    pub tableau: CliffordTableau,
    pub gates: Vec<Gate>,
    pub catastrophic: CatastrophicVerdict,
    pub recursion: RecursionVerdict,
    pub roundtrip: bool,
    pub timing: Vec<(&'static str, f64)>,
}

struct Timer {
    enabled: bool,
    last: Instant,
    stages: Vec<(&'static str, f64)>,
}

impl Timer {
    fn lap(&mut self, stage: &'static str) {
        if self.enabled {
            let now = Instant::now();
            self.stages.push((stage, (now - self.last).as_secs_f64()));
            self.last = now;
        }
    }
}

/// parse → shorten → synthesize → complete → circuit → analyze.
pub fn run_pipeline(input: &ConvolutionalCode, opts: &PipelineOptions) -> Result<PipelineReport> {
    let mut timer = Timer {
        enabled: opts.timing,
        last: Instant::now(),
        stages: Vec::new(),
    };
    let shortening = if opts.skip_shorten {
        None
    } else {
        Some(shorten(input)?)
    };
    let code = shortening
        .as_ref()
        .map_or_else(|| input.clone(), |r| r.output_code.clone());
    timer.lap("shorten");

    let synthesis = synthesize_encoder(&code, opts.seed.unwrap_or(0))?;
    timer.lap("synth");

    let layout = FrameLayout::new(synthesis.m, code.n(), code.k())?;
    let tableau = complete_to_clifford(&synthesis.encoder, opts.seed)?;
    timer.lap("complete");

    let gates = synthesize_circuit(&tableau);
    timer.lap("circuit");

    let catastrophic = detect_catastrophic(&tableau, &layout, opts.max_memory)?;
    let recursion = verify_non_recursive(&tableau, &layout, opts.max_memory)?;
    let roundtrip = roundtrip_verify(&tableau, &layout, &code);
    timer.lap("analysis");

    Ok(PipelineReport {
        input: input.clone(),
        shortening,
        code,
        synthesis,
        layout,
        tableau,
        gates,
        catastrophic,
        recursion,
        roundtrip,
        timing: timer.stages,
    })
}

struct MemoryOps<'a>(&'a MemoryTable);

impl Serialize for MemoryOps<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.ops.len()))?;
        for (&(i, j), g) in self.0.index_map.iter().zip(&self.0.ops) {
            map.serialize_entry(&format!("g_{i}_{j}"), g)?;
        }
        map.end()
    }
}

struct Timing<'a>(&'a [(&'static str, f64)]);

impl Serialize for Timing<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_map(self.0.iter().map(|(k, v)| (k, v)))
    }
}

#[derive(Serialize)]
pub struct CodeJson {
    pub n: usize,
    pub k: usize,
    pub generators: Vec<String>,
}

impl CodeJson {
    pub fn new(code: &ConvolutionalCode) -> Self {
        CodeJson {
            n: code.n(),
            k: code.k(),
            generators: code.generators().iter().map(|g| g.to_string()).collect(),
        }
    }
}

#[derive(Serialize)]
struct ShortenJson<'a> {
    steps: &'a [ShorteningStep],
    output: CodeJson,
}

#[derive(Serialize)]
struct SynthJson<'a> {
    omega: Vec<Vec<u8>>,
    dim: usize,
    rank: usize,
    m: usize,
    memory_ops: MemoryOps<'a>,
    centralizer: &'a [PauliOperator],
    s1_rows: &'a [EncoderRow],
    added_rows: &'a [EncoderRow],
}

#[derive(Serialize)]
struct AnalysisJson<'a> {
    tableau: Vec<PauliOperator>,
    gate_count: usize,
    gates: &'a [Gate],
    catastrophic: bool,
    cycle_witness: Option<&'a CycleWitness>,
    recursive: bool,
    recursion_witness: Option<&'a [StateDiagramEdge]>,
    roundtrip: bool,
}

#[derive(Serialize)]
struct ReportJson<'a> {
    code: CodeJson,
    shorten: Option<ShortenJson<'a>>,
    synth: SynthJson<'a>,
    analysis: AnalysisJson<'a>,
    #[serde(skip_serializing_if = "Option::is_none")]
    timing: Option<Timing<'a>>,
}

impl PipelineReport {
    pub fn to_json(&self) -> String {
        let s = &self.synthesis;
        let report = ReportJson {
            code: CodeJson::new(&self.input),
            shorten: self.shortening.as_ref().map(|r| ShortenJson {
                steps: &r.steps,
                output: CodeJson::new(&r.output_code),
            }),
            synth: SynthJson {
                omega: s.omega.matrix.to_entries(),
                dim: s.omega.dim(),
                rank: s.omega.rank(),
                m: s.m,
                memory_ops: MemoryOps(&s.encoder.memory_ops),
                centralizer: &s.context.centralizer,
                s1_rows: &s.context.s1_rows,
                added_rows: &s.encoder.added_rows,
            },
            analysis: AnalysisJson {
                tableau: self.tableau.images(),
                gate_count: self.gates.len(),
                gates: &self.gates,
                catastrophic: self.catastrophic.catastrophic,
                cycle_witness: self.catastrophic.witness.as_ref(),
                recursive: !self.recursion.non_recursive,
                recursion_witness: self.recursion.witness.as_deref(),
                roundtrip: self.roundtrip,
            },
            timing: (!self.timing.is_empty()).then_some(Timing(&self.timing)),
        };
        serde_json::to_string_pretty(&report).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let s = &self.synthesis;
        let mut out = String::new();
        let _ = writeln!(out, "code: n={} k={}", self.input.n(), self.input.k());
        if let Some(r) = &self.shortening {
            let _ = writeln!(out, "shortening: {} rewrite(s)", r.steps.len());
        }
        for g in self.code.generators() {
            let _ = writeln!(out, "  h {g}");
        }
        let _ = writeln!(
            out,
            "memory commutativity matrix: dim {} rank {} -> m = {}",
            s.omega.dim(),
            s.omega.rank(),
            s.m
        );
        out.push_str(&render_matrix(&s.omega.matrix.to_entries(), "  "));
        let _ = writeln!(out, "memory operators:");
        for (&(i, j), g) in s
            .encoder
            .memory_ops
            .index_map
            .iter()
            .zip(&s.encoder.memory_ops.ops)
        {
            let _ = writeln!(out, "  g_{i},{j} = {g}");
        }
        let _ = writeln!(out, "encoder rows (mem, anc, info) -> (phys, mem):");
        for row in &s.encoder.rows {
            let _ = writeln!(out, "  {row:?}");
        }
        let _ = writeln!(out, "centralizer basis: {}", join(&s.context.centralizer));
        let _ = writeln!(
            out,
            "zero-physical combinations: {}",
            s.context.s1_rows.len()
        );
        for row in &s.context.s1_rows {
            let _ = writeln!(out, "  {row:?}");
        }
        let _ = writeln!(out, "added rows: {}", s.encoder.added_rows.len());
        for row in &s.encoder.added_rows {
            let _ = writeln!(out, "  {row:?}");
        }
        let _ = writeln!(
            out,
            "tableau width {}, {} gates",
            self.tableau.width(),
            self.gates.len()
        );
        let _ = writeln!(
            out,
            "catastrophic: {} ({} zero-physical edges)",
            self.catastrophic.catastrophic, self.catastrophic.zero_physical_edges
        );
        if let Some(w) = &self.catastrophic.witness {
            for e in &w.edges {
                let _ = writeln!(out, "  {e}");
            }
        }
        let _ = writeln!(out, "recursive: {}", !self.recursion.non_recursive);
        if let Some(path) = &self.recursion.witness {
            for e in path {
                let _ = writeln!(out, "  {e}");
            }
        }
        let _ = writeln!(
            out,
            "round trip: {}",
            if self.roundtrip { "ok" } else { "FAILED" }
        );
        for (stage, secs) in &self.timing {
            let _ = writeln!(out, "time {stage}: {secs:.6}s");
        }
        out
    }
}

pub fn render_matrix(entries: &[Vec<u8>], indent: &str) -> String {
    let mut out = String::new();
    for row in entries {
        let line: Vec<String> = row.iter().map(u8::to_string).collect();
        let _ = writeln!(out, "{indent}{}", line.join(" "));
    }
    out
}

fn join(ops: &[PauliOperator]) -> String {
    if ops.is_empty() {
        return "{I}".to_string();
    }
    ops.iter()
        .map(|p| p.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}
