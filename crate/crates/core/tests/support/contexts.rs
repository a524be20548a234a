//! Random chat contexts and the structural checks every extraction must
//! pass on them.
#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use convgraph::corpus::{Corpus, CorpusBuilder, Label};
use convgraph::extraction::{extract_traced, ExtractionParams, Strategy};
use convgraph::features::{featurize, FeatureCatalog, FeatureParams, VariantMatrix};
use convgraph::graph::ConversationalGraph;

/// One random single-channel log.
#[derive(Debug, Clone)]
pub struct RandomLog {
    pub authors: Vec<usize>,
    pub mentions: Vec<Vec<usize>>,
    pub users: usize,
}

impl RandomLog {
    pub fn random(rng: &mut ChaCha8Rng, max_users: usize, max_len: usize) -> RandomLog {
        let users = rng.random_range(1..=max_users);
        let len = rng.random_range(1..=max_len);
        let authors: Vec<usize> = (0..len).map(|_| rng.random_range(0..users)).collect();
        let mentions = (0..len)
            .map(|_| {
                let mut m = Vec::new();
                while rng.random_bool(0.25) {
                    m.push(rng.random_range(0..users));
                }
                m
            })
            .collect();
        RandomLog { authors, mentions, users }
    }

    /// Builds the corpus, naming user `u` by `names[u]` and declaring users
    /// in `declare` order.
    pub fn corpus(&self, names: &[String], declare: &[usize]) -> Corpus {
        let mut b = CorpusBuilder::new();
        for &u in declare {
            b.declare_user(&names[u]);
        }
        for (i, (&a, m)) in self.authors.iter().zip(&self.mentions).enumerate() {
            let text: Vec<&str> = m.iter().map(|&u| names[u].as_str()).collect();
            b.push(&format!("m{i}"), "c", i as u64 + 1, &names[a], Label::NonAbuse, &format!("hey {} ok", text.join(" ")));
        }
        b.build().expect("generated corpus is valid")
    }
}

fn weak_components(g: &ConversationalGraph, keep: &BTreeSet<&str>) -> usize {
    let n = g.vertex_count();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for (u, v, _) in g.edges() {
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        parent[a] = b;
    }
    let roots: BTreeSet<usize> =
        (0..n).filter(|&v| keep.contains(g.label(v))).map(|v| find(&mut parent, v)).collect();
    roots.len()
}

fn labels(g: &ConversationalGraph) -> BTreeSet<&str> {
    g.labels().iter().map(String::as_str).collect()
}

/// Outcome of [`extraction_suite`].
#[derive(Debug, Default)]
pub struct ExtractionTally {
    pub contexts: usize,
    pub steps: usize,
    pub relabelings: usize,
    pub errors: Vec<String>,
}

/// Checks weight conservation per window step, weak connectivity of the
/// Full graph over the posting authors, the vertex-set union and relabeling
/// invariance of the feature vector on `count` random contexts with window
/// size at least 2. Every `relabel_every`-th context is also featurized.
pub fn extraction_suite(seed: u64, count: usize, relabel_every: usize) -> ExtractionTally {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut t = ExtractionTally::default();
    let strategies = [Strategy::Uniform, Strategy::Linear, Strategy::Recursive];
    for id in 0..count {
        let log = RandomLog::random(&mut rng, 8, 40);
        let window = rng.random_range(2..=12);
        let strategy = strategies[rng.random_range(0..3)];
        let directed = rng.random_bool(0.5);
        let params = ExtractionParams::new(window, strategy, directed);
        let target = rng.random_range(0..log.authors.len());
        let size = rng.random_range(1..=log.authors.len() + 4);

        let names: Vec<String> = (0..log.users).map(|u| format!("user{u}")).collect();
        let order: Vec<usize> = (0..log.users).collect();
        let corpus = log.corpus(&names, &order);
        let ctx = corpus.context_period(&format!("m{target}"), size).expect("target exists");
        let (triple, trace) = match extract_traced(&corpus, &ctx, &params) {
            Ok(x) => x,
            Err(e) => {
                t.errors.push(format!("context {id}: {e}"));
                continue;
            }
        };
        t.contexts += 1;

        for (k, step) in trace.iter().enumerate() {
            t.steps += 1;
            let want = if step.receivers == 0 { 0.0 } else { 1.0 };
            if (step.total_weight - want).abs() > 1e-12 {
                t.errors.push(format!("context {id} step {k}: weight {} over {} receivers", step.total_weight, step.receivers));
            }
        }

        let posting: BTreeSet<&str> = ctx.messages().map(|m| corpus.user_name(m.author)).collect();
        let wc = weak_components(&triple.full, &posting);
        if wc != 1 {
            t.errors.push(format!("context {id}: full graph has {wc} weak components over posting authors"));
        }
        let union: BTreeSet<&str> = labels(&triple.before).union(&labels(&triple.after)).copied().collect();
        if labels(&triple.full) != union {
            t.errors.push(format!("context {id}: full vertices differ from the union of the halves"));
        }

        if relabel_every > 0 && id % relabel_every == 0 {
            t.relabelings += 1;
            let mut perm: Vec<usize> = (0..log.users).collect();
            perm.shuffle(&mut rng);
            let renamed: Vec<String> = perm.iter().map(|p| format!("r{p}x")).collect();
            let mut declare = order.clone();
            declare.shuffle(&mut rng);
            let other = log.corpus(&renamed, &declare);
            let matrix = if directed { VariantMatrix::default() } else { VariantMatrix::undirected() };
            let cat = FeatureCatalog::build(&matrix);
            let fp = FeatureParams { context_size: size, extraction: params, ..FeatureParams::default() };
            let a = featurize(&corpus, &format!("m{target}"), &fp, &cat);
            let b = featurize(&other, &format!("m{target}"), &fp, &cat);
            match (a, b) {
                (Ok(a), Ok(b)) => {
                    let bad = a.values.iter().zip(&b.values).position(|(x, y)| (x - y).abs() > 1e-9 * x.abs().max(1.0));
                    if let Some(j) = bad {
                        t.errors.push(format!(
                            "context {id}: relabeling changed {} from {} to {}",
                            cat.names()[j],
                            a.values[j],
                            b.values[j]
                        ));
                    }
                }
                (a, b) => t.errors.push(format!("context {id}: featurization failed: {:?} / {:?}", a.err(), b.err())),
            }
        }
    }
    t
}
