//! Seeded generator of labeled synthetic chat corpora.
//!
//! Every context is a segment of `segment_length` messages with the target
//! in the middle, so a context period of the same size covers exactly one
//! segment. Non-abuse segments are ordinary conversations whose group size
//! follows a truncated power law, with a share of large lively discussions
//! as noise. Abuse segments start as an ordinary conversation; after the
//! target a crowd joins in, mentioning the target author, who answers back.
//! Only interaction structure differs between the classes: the text of every
//! message is filler plus user mentions.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use rayon::prelude::*;

use crate::corpus::{Corpus, CorpusBuilder, Label};
use crate::error::{Error, Result};
use crate::extraction::{extract, ExtractionParams};
use crate::measures::graph;

#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorConfig {
    pub seed: u64,
    pub channels: usize,
    pub abuse_contexts: usize,
    pub nonabuse_contexts: usize,
    pub segment_length: usize,
    pub user_pool: usize,
    /// Mean and spread of the number of participants of an abuse segment.
    pub abuse_crowd_mean: f64,
    pub abuse_crowd_sd: f64,
    /// Mean size of the group talking before an abusive message.
    pub abuse_prelude_users: f64,
    /// Probability that a crowd message mentions the target author.
    pub pile_on_reference_rate: f64,
    /// Probability that a post-target message is the target author
    /// answering the latest crowd member.
    pub abuser_reply_rate: f64,
    /// Average number of newcomers per pile-on burst.
    pub pile_on_burst_newcomers: f64,
    /// Probability that a burst message comes from any earlier participant
    /// rather than from the burst group.
    pub pile_on_mixing: f64,
    /// Share of abuse segments with a small, quiet response.
    pub abuse_quiet_rate: f64,
    /// Exponent of the power law of non-abuse group sizes.
    pub nonabuse_size_exponent: f64,
    pub nonabuse_size_max: usize,
    /// Share of non-abuse segments that are large discussions.
    pub nonabuse_crowd_rate: f64,
    pub nonabuse_crowd_mean: f64,
    /// Probability that the next author answers one of the last speakers.
    pub reply_recency_bias: f64,
    /// Probability that an ordinary message mentions a recent speaker.
    pub reference_rate: f64,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        GeneratorConfig {
            seed: 42,
            channels: 24,
            abuse_contexts: 600,
            nonabuse_contexts: 1800,
            segment_length: 200,
            user_pool: 6000,
            abuse_crowd_mean: 40.0,
            abuse_crowd_sd: 4.0,
            abuse_prelude_users: 6.0,
            pile_on_reference_rate: 0.5,
            abuser_reply_rate: 0.2,
            pile_on_burst_newcomers: 9.0,
            pile_on_mixing: 0.05,
            abuse_quiet_rate: 0.05,
            nonabuse_size_exponent: 2.0,
            nonabuse_size_max: 60,
            nonabuse_crowd_rate: 0.15,
            nonabuse_crowd_mean: 38.0,
            reply_recency_bias: 0.6,
            reference_rate: 0.1,
        }
    }
}

macro_rules! config_fields {
    ($($field:ident),*) => {
        impl GeneratorConfig {
            /// Flat `key=value` text; blank lines and `#` comments allowed.
            /// Missing keys keep their defaults.
            pub fn parse(text: &str) -> Result<GeneratorConfig> {
                let mut cfg = GeneratorConfig::default();
                for (i, line) in text.lines().enumerate() {
                    let line = line.trim();
                    if line.is_empty() || line.starts_with('#') {
                        continue;
                    }
                    let (k, v) = line
                        .split_once('=')
                        .ok_or_else(|| Error::Config(format!("line {}: expected key=value", i + 1)))?;
                    let (k, v) = (k.trim(), v.trim());
                    match k {
                        $(stringify!($field) => cfg.$field = parse_value(k, v)?,)*
                        _ => return Err(Error::Config(format!("line {}: unknown key {}", i + 1, k))),
                    }
                }
                cfg.validate()?;
                Ok(cfg)
            }

            pub fn to_text(&self) -> String {
                let mut out = String::new();
                $(let _ = writeln!(out, "{}={}", stringify!($field), self.$field);)*
                out
            }
        }
    };
}

config_fields!(
    seed,
    channels,
    abuse_contexts,
    nonabuse_contexts,
    segment_length,
    user_pool,
    abuse_crowd_mean,
    abuse_crowd_sd,
    abuse_prelude_users,
    pile_on_reference_rate,
    abuser_reply_rate,
    pile_on_burst_newcomers,
    pile_on_mixing,
    abuse_quiet_rate,
    nonabuse_size_exponent,
    nonabuse_size_max,
    nonabuse_crowd_rate,
    nonabuse_crowd_mean,
    reply_recency_bias,
    reference_rate
);

fn parse_value<T: FromStr>(key: &str, v: &str) -> Result<T> {
    v.parse().map_err(|_| Error::Config(format!("bad value for {key}: {v}")))
}

impl GeneratorConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Config(m));
        if self.channels == 0 {
            return bad("channels must be positive".into());
        }
        if self.segment_length < 3 {
            return bad("segment_length must be at least 3".into());
        }
        for (name, p) in [
            ("pile_on_reference_rate", self.pile_on_reference_rate),
            ("abuser_reply_rate", self.abuser_reply_rate),
            ("pile_on_mixing", self.pile_on_mixing),
            ("abuse_quiet_rate", self.abuse_quiet_rate),
            ("nonabuse_crowd_rate", self.nonabuse_crowd_rate),
            ("reply_recency_bias", self.reply_recency_bias),
            ("reference_rate", self.reference_rate),
        ] {
            if !(0.0..=1.0).contains(&p) {
                return bad(format!("{name} must be a probability, got {p}"));
            }
        }
        if !(self.pile_on_burst_newcomers >= 1.0) {
            return bad("pile_on_burst_newcomers must be at least 1".into());
        }
        if !(self.abuse_crowd_mean >= 2.0 && self.abuse_crowd_sd >= 0.0 && self.abuse_prelude_users >= 1.0) {
            return bad("abuse crowd parameters out of range".into());
        }
        if !(self.nonabuse_size_exponent > 0.0 && self.nonabuse_size_max >= 1 && self.nonabuse_crowd_mean >= 1.0) {
            return bad("non-abuse size parameters out of range".into());
        }
        let largest = self.abuse_crowd_mean.max(self.nonabuse_crowd_mean).max(self.nonabuse_size_max as f64);
        if largest > self.user_pool as f64 {
            return bad(format!("user pool of {} cannot host groups of {}", self.user_pool, largest));
        }
        if largest >= self.segment_length as f64 {
            return bad(format!("segments of {} messages cannot host groups of {}", self.segment_length, largest));
        }
        Ok(())
    }
}

/// A generated target with its label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Target {
    pub id: String,
    pub label: Label,
}

/// Target list as `id<TAB>A|N` lines.
pub fn targets_to_text(targets: &[Target]) -> String {
    targets.iter().map(|t| format!("{}\t{}\n", t.id, t.label.code())).collect()
}

/// Reads `id` or `id<TAB>label` lines.
pub fn parse_targets(text: &str) -> Result<Vec<(String, Option<Label>)>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            let mut parts = l.split('\t');
            let id = parts.next().unwrap_or_default().trim().to_string();
            let label = match parts.next().map(str::trim) {
                None => None,
                Some(code) => Some(
                    Label::from_code(code)
                        .ok_or_else(|| Error::Parse { line: i + 1, reason: format!("bad label {code}") })?,
                ),
            };
            Ok((id, label))
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Abuse,
    NonAbuse,
}

struct Msg {
    author: usize,
    mentions: Vec<usize>,
}

struct Segment {
    messages: Vec<Msg>,
    target: usize,
}

fn user_name(u: usize) -> String {
    format!("u{u:05}")
}

fn text_of(m: &Msg) -> String {
    let mut t = String::from("...");
    for &u in &m.mentions {
        t.push(' ');
        t.push_str(&user_name(u));
    }
    t
}

/// Ordinary conversation: the next author answers one of the last three
/// other speakers with probability `reply_recency_bias`, otherwise is drawn
/// by activity (the i-th participant with weight 1/(i+1)).
struct Conversation<'a> {
    people: &'a [usize],
    weights: Vec<f64>,
    recent: Vec<usize>,
}

impl<'a> Conversation<'a> {
    fn new(people: &'a [usize]) -> Self {
        Conversation { people, weights: (0..people.len()).map(|i| 1.0 / (i + 1) as f64).collect(), recent: Vec::new() }
    }

    fn speak(&mut self, author: usize) {
        self.recent.retain(|&u| u != author);
        self.recent.push(author);
    }

    fn last(&self) -> Option<usize> {
        self.recent.last().copied()
    }

    fn recent_others(&self, author: usize) -> Vec<usize> {
        self.recent.iter().rev().filter(|&&u| u != author).take(3).copied().collect()
    }

    fn next(&mut self, cfg: &GeneratorConfig, rng: &mut ChaCha8Rng) -> Msg {
        let others = self.last().map(|a| self.recent_others(a)).unwrap_or_default();
        let author = if !others.is_empty() && rng.random_bool(cfg.reply_recency_bias) {
            others[rng.random_range(0..others.len())]
        } else {
            let total: f64 = self.weights.iter().sum();
            let mut x = rng.random_range(0.0..total);
            let mut pick = self.people.len() - 1;
            for (i, w) in self.weights.iter().enumerate() {
                if x < *w {
                    pick = i;
                    break;
                }
                x -= w;
            }
            self.people[pick]
        };
        let mut mentions = Vec::new();
        let candidates = self.recent_others(author);
        if !candidates.is_empty() && rng.random_bool(cfg.reference_rate) {
            mentions.push(candidates[rng.random_range(0..candidates.len())]);
        }
        self.speak(author);
        Msg { author, mentions }
    }
}

fn power_law_size(cfg: &GeneratorConfig, rng: &mut ChaCha8Rng) -> usize {
    let weights: Vec<f64> = (1..=cfg.nonabuse_size_max).map(|k| (k as f64).powf(-cfg.nonabuse_size_exponent)).collect();
    let total: f64 = weights.iter().sum();
    let mut x = rng.random_range(0.0..total);
    for (i, w) in weights.iter().enumerate() {
        if x < *w {
            return i + 1;
        }
        x -= w;
    }
    cfg.nonabuse_size_max
}

fn normal_size(mean: f64, sd: f64, lo: usize, hi: usize, rng: &mut ChaCha8Rng) -> usize {
    let x = Normal::new(mean, sd.max(1e-9)).expect("finite parameters").sample(rng);
    (x.round().max(lo as f64) as usize).min(hi)
}

fn participants(k: usize, cfg: &GeneratorConfig, rng: &mut ChaCha8Rng) -> Vec<usize> {
    rand::seq::index::sample(rng, cfg.user_pool, k).into_iter().collect()
}

fn nonabuse_segment(cfg: &GeneratorConfig, rng: &mut ChaCha8Rng) -> Segment {
    let len = cfg.segment_length;
    if rng.random_bool(cfg.nonabuse_crowd_rate) {
        let crowd = normal_size(cfg.nonabuse_crowd_mean, cfg.nonabuse_crowd_mean / 5.0, 3, len / 2 - 1, rng);
        return crowd_segment(cfg, rng, crowd, false);
    }
    let people = participants(power_law_size(cfg, rng), cfg, rng);
    let mut conv = Conversation::new(&people);
    let messages = (0..len).map(|_| conv.next(cfg, rng)).collect();
    Segment { messages, target: len / 2 }
}

fn abuse_segment(cfg: &GeneratorConfig, rng: &mut ChaCha8Rng) -> Segment {
    let quiet = rng.random_bool(cfg.abuse_quiet_rate);
    let mean = if quiet { cfg.abuse_prelude_users * 2.0 } else { cfg.abuse_crowd_mean };
    let crowd = normal_size(mean, cfg.abuse_crowd_sd, 3, cfg.segment_length / 2 - 1, rng);
    crowd_segment(cfg, rng, crowd, true)
}

/// A small group talks until the target, written by `people[0]`; then the
/// rest of the crowd joins in bursts, each bringing a few newcomers who talk
/// with one earlier participant. With `focus` the crowd mentions the target
/// author, who answers back; otherwise the discussion just grows.
fn crowd_segment(cfg: &GeneratorConfig, rng: &mut ChaCha8Rng, crowd: usize, focus: bool) -> Segment {
    let len = cfg.segment_length;
    let t = len / 2;
    let prelude = normal_size(cfg.abuse_prelude_users, cfg.abuse_prelude_users / 3.0, 1, crowd - 1, rng);
    let people = participants(crowd, cfg, rng);
    let author = people[0];
    let mut messages = Vec::with_capacity(len);

    let mut conv = Conversation::new(&people[..prelude]);
    for _ in 0..t {
        messages.push(conv.next(cfg, rng));
    }
    messages.push(Msg { author, mentions: conv.recent_others(author).into_iter().take(1).collect() });
    conv.speak(author);

    let remaining = len - t - 1;
    let bursts = ((crowd - prelude) as f64 / cfg.pile_on_burst_newcomers).ceil().max(1.0) as usize;
    let mut joined = prelude;
    let mut done = 0;
    for b in 0..bursts {
        let size = (remaining - done) / (bursts - b);
        let fresh = (crowd - joined).div_ceil(bursts - b);
        let mut group: Vec<usize> = people[joined..joined + fresh].to_vec();
        let mut silent = group.clone();
        joined += fresh;
        group.push(people[1 + rng.random_range(0..joined - 1)]);
        for k in 0..size {
            let last = conv.last().unwrap_or(author);
            let speaker = if !silent.is_empty() && rng.random_bool((2.0 * silent.len() as f64 / (size - k) as f64).min(1.0)) {
                silent.remove(0)
            } else if focus && last != author && rng.random_bool(cfg.abuser_reply_rate) {
                author
            } else if rng.random_bool(cfg.pile_on_mixing) {
                people[rng.random_range(0..joined)]
            } else {
                let pool: Vec<usize> = group.iter().copied().filter(|&u| u != last).collect();
                if pool.is_empty() {
                    people[rng.random_range(0..joined)]
                } else {
                    pool[rng.random_range(0..pool.len())]
                }
            };
            let mentions = if focus && speaker == author {
                if last != author && rng.random_bool(0.7) { vec![last] } else { Vec::new() }
            } else if focus && rng.random_bool(cfg.pile_on_reference_rate) {
                vec![author]
            } else {
                let others = conv.recent_others(speaker);
                if !others.is_empty() && rng.random_bool(cfg.reference_rate) {
                    vec![others[rng.random_range(0..others.len())]]
                } else {
                    Vec::new()
                }
            };
            silent.retain(|&u| u != speaker);
            conv.speak(speaker);
            messages.push(Msg { author: speaker, mentions });
        }
        done += size;
    }
    Segment { messages, target: t }
}

/// Generates the corpus and its targets. Segments are dealt round-robin to
/// channels after a seeded shuffle; each channel is generated from its own
/// stream of the seeded generator, in parallel.
pub fn generate(cfg: &GeneratorConfig) -> Result<(Corpus, Vec<Target>)> {
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut kinds: Vec<Kind> =
        std::iter::repeat_n(Kind::Abuse, cfg.abuse_contexts).chain(std::iter::repeat_n(Kind::NonAbuse, cfg.nonabuse_contexts)).collect();
    kinds.shuffle(&mut rng);
    let mut per_channel: Vec<Vec<Kind>> = vec![Vec::new(); cfg.channels];
    for (i, k) in kinds.into_iter().enumerate() {
        per_channel[i % cfg.channels].push(k);
    }
    let channels: Vec<Vec<(Segment, Kind)>> = per_channel
        .par_iter()
        .enumerate()
        .map(|(c, kinds)| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            rng.set_stream(c as u64 + 1);
            kinds
                .iter()
                .map(|&k| {
                    let seg = match k {
                        Kind::Abuse => abuse_segment(cfg, &mut rng),
                        Kind::NonAbuse => nonabuse_segment(cfg, &mut rng),
                    };
                    (seg, k)
                })
                .collect()
        })
        .collect();

    let mut b = CorpusBuilder::new();
    let mut targets: BTreeMap<(usize, usize), Target> = BTreeMap::new();
    for (c, segs) in channels.iter().enumerate() {
        let channel = format!("ch{c:03}");
        let mut seq = 0u64;
        for (s, (seg, kind)) in segs.iter().enumerate() {
            for (i, m) in seg.messages.iter().enumerate() {
                seq += 1;
                let id = format!("{channel}-{seq:06}");
                let label = match (i == seg.target, kind) {
                    (true, Kind::Abuse) => Label::Abuse,
                    (true, Kind::NonAbuse) => Label::NonAbuse,
                    _ => Label::Unlabeled,
                };
                if i == seg.target {
                    targets.insert((s, c), Target { id: id.clone(), label });
                }
                b.push(&id, &channel, seq, &user_name(m.author), label, &text_of(m));
            }
        }
    }
    Ok((b.build()?, targets.into_values().collect()))
}

/// Class-conditional summary of the After graphs of a set of targets.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ClassCalibration {
    pub count: usize,
    pub vertex_counts: Vec<usize>,
    /// After-graph reciprocity; graphs without arcs count as 0.
    pub reciprocity: Vec<f64>,
}

impl ClassCalibration {
    pub fn mean_vertices(&self) -> f64 {
        crate::measures::mean(&self.vertex_counts.iter().map(|&v| v as f64).collect::<Vec<_>>())
    }

    pub fn median_vertices(&self) -> f64 {
        let mut v = self.vertex_counts.clone();
        v.sort_unstable();
        match v.len() {
            0 => 0.0,
            n if n % 2 == 1 => v[n / 2] as f64,
            n => (v[n / 2 - 1] + v[n / 2]) as f64 / 2.0,
        }
    }

    pub fn share_below(&self, k: usize) -> f64 {
        if self.count == 0 {
            return 0.0;
        }
        self.vertex_counts.iter().filter(|&&v| v < k).count() as f64 / self.count as f64
    }

    pub fn mean_reciprocity(&self) -> f64 {
        crate::measures::mean(&self.reciprocity)
    }

    /// Share of targets whose reciprocity is exactly 0 or 1.
    pub fn reciprocity_extreme_share(&self) -> f64 {
        if self.count == 0 {
            return 0.0;
        }
        self.reciprocity.iter().filter(|&&r| r == 0.0 || r == 1.0).count() as f64 / self.count as f64
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct CalibrationReport {
    pub abuse: ClassCalibration,
    pub nonabuse: ClassCalibration,
}

impl CalibrationReport {
    pub fn to_text(&self) -> String {
        let mut out = String::from("class\tcount\tmean_vertices\tmedian_vertices\tshare_below_5\tmean_reciprocity\treciprocity_0_or_1\n");
        for (name, c) in [("abuse", &self.abuse), ("nonabuse", &self.nonabuse)] {
            let _ = writeln!(
                out,
                "{}\t{}\t{:.4}\t{:.1}\t{:.4}\t{:.4}\t{:.4}",
                name,
                c.count,
                c.mean_vertices(),
                c.median_vertices(),
                c.share_below(5),
                c.mean_reciprocity(),
                c.reciprocity_extreme_share()
            );
        }
        out
    }
}

/// Extracts the After graph of every labeled target and summarises vertex
/// counts and reciprocity per class. Targets that fail to extract or are
/// unlabeled are skipped.
pub fn validate_calibration(
    corpus: &Corpus,
    targets: &[Target],
    params: &ExtractionParams,
    context_size: usize,
) -> CalibrationReport {
    let rows: Vec<Option<(Label, usize, f64)>> = targets
        .par_iter()
        .map(|t| {
            let ctx = corpus.context_period(&t.id, context_size).ok()?;
            let triple = extract(corpus, &ctx, params).ok()?;
            let after = &triple.after;
            let recip = if after.is_directed() {
                graph::reciprocity(&after.view(false, crate::graph::DirectionMode::Directed).ok()?).ok()?.value
            } else {
                1.0
            };
            Some((t.label, after.vertex_count(), recip))
        })
        .collect();
    let mut report = CalibrationReport::default();
    for (label, n, r) in rows.into_iter().flatten() {
        let c = match label {
            Label::Abuse => &mut report.abuse,
            Label::NonAbuse => &mut report.nonabuse,
            Label::Unlabeled => continue,
        };
        c.count += 1;
        c.vertex_counts.push(n);
        c.reciprocity.push(r);
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(seed: u64, abuse: usize, nonabuse: usize) -> GeneratorConfig {
        GeneratorConfig { seed, channels: 4, abuse_contexts: abuse, nonabuse_contexts: nonabuse, ..Default::default() }
    }

    #[test]
    fn config_round_trip_and_errors() {
        let cfg = GeneratorConfig { seed: 7, abuse_crowd_mean: 35.5, ..Default::default() };
        assert_eq!(GeneratorConfig::parse(&cfg.to_text()).unwrap(), cfg);
        assert_eq!(GeneratorConfig::parse("# c\n\nseed = 3\n").unwrap().seed, 3);
        assert!(GeneratorConfig::parse("nope=1").is_err());
        assert!(GeneratorConfig::parse("seed").is_err());
        assert!(GeneratorConfig::parse("reference_rate=1.5").is_err());
        assert!(GeneratorConfig::parse("user_pool=20").is_err());
        assert!(GeneratorConfig::parse("channels=0").is_err());
    }

    #[test]
    fn no_abuse_means_no_positive_labels() {
        let (corpus, targets) = generate(&small(1, 0, 30)).unwrap();
        assert_eq!(targets.len(), 30);
        assert!(targets.iter().all(|t| t.label == Label::NonAbuse));
        assert!(corpus.messages().iter().all(|m| m.label != Label::Abuse));
    }

    #[test]
    fn deterministic_and_labels_only_on_targets() {
        let cfg = small(5, 10, 20);
        let (a, ta) = generate(&cfg).unwrap();
        let (b, tb) = generate(&cfg).unwrap();
        assert_eq!(a.to_records(), b.to_records());
        assert_eq!(ta, tb);
        let labeled = a.messages().iter().filter(|m| m.label != Label::Unlabeled).count();
        assert_eq!(labeled, 30);
        for t in &ta {
            assert_eq!(a.message(&t.id).unwrap().label, t.label);
        }
        let reparsed = crate::corpus::parse_corpus(a.to_records().as_bytes()).unwrap();
        assert_eq!(reparsed.to_records(), a.to_records());
        assert_ne!(generate(&small(6, 10, 20)).unwrap().0.to_records(), a.to_records());
    }

    #[test]
    fn targets_text_round_trip() {
        let t = vec![Target { id: "a".into(), label: Label::Abuse }, Target { id: "b".into(), label: Label::NonAbuse }];
        let parsed = parse_targets(&targets_to_text(&t)).unwrap();
        assert_eq!(parsed, vec![("a".to_string(), Some(Label::Abuse)), ("b".to_string(), Some(Label::NonAbuse))]);
        assert_eq!(parse_targets("x\n\n").unwrap(), vec![("x".to_string(), None)]);
        assert!(parse_targets("x\tQ").is_err());
    }

    #[test]
    fn empty_corpus_gives_empty_report() {
        let r = validate_calibration(&Corpus::empty(), &[], &ExtractionParams::default(), 200);
        assert_eq!(r, CalibrationReport::default());
    }

    #[test]
    fn calibration_targets_on_default_config() {
        let cfg = GeneratorConfig { abuse_contexts: 200, nonabuse_contexts: 200, ..Default::default() };
        let (corpus, targets) = generate(&cfg).unwrap();
        let r = validate_calibration(&corpus, &targets, &ExtractionParams::default(), cfg.segment_length);
        assert_eq!((r.abuse.count, r.nonabuse.count), (200, 200));
        let mean = r.abuse.mean_vertices();
        assert!((35.0..=45.0).contains(&mean), "abuse vertex mean {mean}");
        assert!(r.nonabuse.median_vertices() < 10.0, "{}", r.nonabuse.median_vertices());
        let rec = r.abuse.mean_reciprocity();
        assert!((0.6..=0.8).contains(&rec), "abuse reciprocity {rec}");
        assert!(r.nonabuse.reciprocity_extreme_share() > 0.3, "{}", r.nonabuse.reciprocity_extreme_share());
    }
}
