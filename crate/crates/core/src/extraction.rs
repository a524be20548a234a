//! Sliding-window extraction of the Before, After and Full conversational
//! graphs of a targeted message.

use std::collections::HashMap;
use std::str::FromStr;

use crate::corpus::{ContextPeriod, Corpus, Message, UserId};
use crate::error::{Error, Result};
use crate::graph::{ConversationalGraph, VertexId};

/// Default upper bound on the sliding window, in messages.
pub const MAX_WINDOW: usize = 19;

/// Receiver scoring strategy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Strategy {
    Uniform,
    /// Linear decay normalised to sum to one: `2(N+1-i) / (N(N+1))`.
    Linear,
    /// Linear decay `(N-i) / sum(1..=N)`, which sums to `(N-1)/(N+1)`.
    LinearUnnormalized,
    /// 60% to the first receiver, the rest split recursively.
    Recursive,
}

impl Strategy {
    pub fn name(self) -> &'static str {
        match self {
            Strategy::Uniform => "uniform",
            Strategy::Linear => "linear",
            Strategy::LinearUnnormalized => "linear-unnormalized",
            Strategy::Recursive => "recursive",
        }
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "uniform" => Ok(Strategy::Uniform),
            "linear" => Ok(Strategy::Linear),
            "linear-unnormalized" => Ok(Strategy::LinearUnnormalized),
            "recursive" => Ok(Strategy::Recursive),
            other => Err(Error::InvalidArgument(format!("unknown strategy {other:?}"))),
        }
    }
}

/// Score of the receiver at rank `i` (1-based) in a list of length `n`.
pub fn score(strategy: Strategy, i: usize, n: usize) -> Result<f64> {
    if n == 0 || i == 0 || i > n {
        return Err(Error::InvalidArgument(format!("rank {i} out of range for {n} receivers")));
    }
    let (i, n) = (i as f64, n as f64);
    Ok(match strategy {
        Strategy::Uniform => 1.0 / n,
        Strategy::Linear => 2.0 * (n + 1.0 - i) / (n * (n + 1.0)),
        Strategy::LinearUnnormalized => (n - i) / (n * (n + 1.0) / 2.0),
        Strategy::Recursive => {
            if i < n {
                0.6 * 0.4f64.powf(i - 1.0)
            } else {
                0.4f64.powf(i - 1.0)
            }
        }
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtractionParams {
    pub window_size: usize,
    pub strategy: Strategy,
    pub directed: bool,
    pub max_window: usize,
}

impl Default for ExtractionParams {
    fn default() -> Self {
        ExtractionParams { window_size: 10, strategy: Strategy::Recursive, directed: true, max_window: MAX_WINDOW }
    }
}

impl ExtractionParams {
    pub fn new(window_size: usize, strategy: Strategy, directed: bool) -> Self {
        ExtractionParams { window_size, strategy, directed, ..Default::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if self.window_size == 0 || self.window_size > self.max_window {
            return Err(Error::InvalidArgument(format!(
                "window size {} outside [1, {}]",
                self.window_size, self.max_window
            )));
        }
        Ok(())
    }
}

/// Ordered candidate recipients of the current message.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReceiverList {
    pub receivers: Vec<UserId>,
}

impl ReceiverList {
    pub fn len(&self) -> usize {
        self.receivers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.receivers.is_empty()
    }
}

/// Builds the receiver list for the last message of `window`: referenced
/// users first (by first mention), then the other window authors from most
/// to least recent. The current author never appears.
pub fn receiver_list(window: &[Message], references: &[UserId]) -> ReceiverList {
    let Some(current) = window.last() else {
        return ReceiverList { receivers: Vec::new() };
    };
    receiver_list_by_author(window.iter().map(|m| m.author), current.author, references)
}

fn receiver_list_by_author<I>(authors: I, current: UserId, references: &[UserId]) -> ReceiverList
where
    I: DoubleEndedIterator<Item = UserId>,
{
    let mut receivers: Vec<UserId> = Vec::new();
    for &r in references {
        if r != current && !receivers.contains(&r) {
            receivers.push(r);
        }
    }
    for a in authors.rev() {
        if a != current && !receivers.contains(&a) {
            receivers.push(a);
        }
    }
    ReceiverList { receivers }
}

/// The three graphs of a context period.
#[derive(Debug, Clone, PartialEq)]
pub struct GraphTriple {
    pub before: ConversationalGraph,
    pub after: ConversationalGraph,
    pub full: ConversationalGraph,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GraphKind {
    Before,
    After,
    Full,
}

impl GraphKind {
    pub const ALL: [GraphKind; 3] = [GraphKind::Before, GraphKind::After, GraphKind::Full];

    pub fn name(self) -> &'static str {
        match self {
            GraphKind::Before => "before",
            GraphKind::After => "after",
            GraphKind::Full => "full",
        }
    }
}

impl GraphTriple {
    pub fn get(&self, kind: GraphKind) -> &ConversationalGraph {
        match kind {
            GraphKind::Before => &self.before,
            GraphKind::After => &self.after,
            GraphKind::Full => &self.full,
        }
    }
}

/// Record of one window step, for weight-conservation checks.
#[derive(Debug, Clone, PartialEq)]
pub struct StepTrace {
    pub receivers: usize,
    pub total_weight: f64,
}

/// Extracts the Before (past + target), After (target + future) and Full
/// graphs. Every graph holds all authors of the context period, so users
/// active only in the other half appear as isolates.
pub fn extract(corpus: &Corpus, context: &ContextPeriod<'_>, params: &ExtractionParams) -> Result<GraphTriple> {
    let (triple, _) = extract_traced(corpus, context, params)?;
    Ok(triple)
}

/// Same as [`extract`], also returning the per-step weight totals of the
/// Full graph.
pub fn extract_traced(
    corpus: &Corpus,
    context: &ContextPeriod<'_>,
    params: &ExtractionParams,
) -> Result<(GraphTriple, Vec<StepTrace>)> {
    params.validate()?;
    let all: Vec<&Message> = context.messages().collect();
    let refs: Vec<Vec<UserId>> = all.iter().map(|m| corpus.references(m)).collect();
    let past = context.past.len();

    let mut authors: Vec<UserId> = Vec::new();
    for m in &all {
        if !authors.contains(&m.author) {
            authors.push(m.author);
        }
    }
    let name = |u: UserId| corpus.user_name(u);

    let mut trace = Vec::new();
    let before = build_graph(&all[..=past], &refs[..=past], &authors, params, &name, None)?;
    let after = build_graph(&all[past..], &refs[past..], &authors, params, &name, None)?;
    let full = build_graph(&all, &refs, &authors, params, &name, Some(&mut trace))?;
    Ok((GraphTriple { before, after, full }, trace))
}

fn build_graph<'a>(
    seq: &[&Message],
    refs: &[Vec<UserId>],
    authors: &[UserId],
    params: &ExtractionParams,
    name: &dyn Fn(UserId) -> &'a str,
    mut trace: Option<&mut Vec<StepTrace>>,
) -> Result<ConversationalGraph> {
    let mut g = ConversationalGraph::new(params.directed);
    let mut vertex: HashMap<UserId, VertexId> = HashMap::new();
    for &a in authors {
        vertex.insert(a, g.add_vertex(name(a)));
    }
    for t in 0..seq.len() {
        let lo = (t + 1).saturating_sub(params.window_size);
        let window = &seq[lo..=t];
        let current = seq[t].author;
        let list = receiver_list_by_author(window.iter().map(|m| m.author), current, &refs[t]);
        let n = list.len();
        let src = vertex[&current];
        let mut total = 0.0;
        for (rank, &r) in list.receivers.iter().enumerate() {
            let dst = *vertex.entry(r).or_insert_with(|| g.add_vertex(name(r)));
            let w = score(params.strategy, rank + 1, n)?;
            total += w;
            if w > 0.0 {
                g.add_weight(src, dst, w)?;
            }
        }
        if let Some(tr) = trace.as_deref_mut() {
            tr.push(StepTrace { receivers: n, total_weight: total });
        }
    }
    Ok(g)
}
