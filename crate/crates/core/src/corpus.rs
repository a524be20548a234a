//! Chat-log corpora: parsing, user references and context periods.
//!
//! The on-disk format is one message per line with six tab-separated fields:
//! `id`, `channel`, `seq`, `author`, `label` (`A`, `N` or `U`) and `text`.
//! Tabs, newlines and backslashes inside the text are escaped as `\t`, `\n`
//! and `\\`.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::io::BufRead;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UserId(pub u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChannelId(pub u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Label {
    Abuse,
    NonAbuse,
    Unlabeled,
}

impl Label {
    pub fn code(self) -> char {
        match self {
            Label::Abuse => 'A',
            Label::NonAbuse => 'N',
            Label::Unlabeled => 'U',
        }
    }

    pub fn from_code(s: &str) -> Option<Label> {
        match s {
            "A" => Some(Label::Abuse),
            "N" => Some(Label::NonAbuse),
            "U" => Some(Label::Unlabeled),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Message {
    pub id: String,
    pub channel: ChannelId,
    pub seq: u64,
    pub author: UserId,
    pub text: String,
    pub label: Label,
}

#[derive(Debug, Clone)]
struct Channel {
    name: String,
    /// Range into `Corpus::messages`.
    start: usize,
    end: usize,
}

/// Immutable, channel-grouped message store.
#[derive(Debug, Clone)]
pub struct Corpus {
    messages: Vec<Message>,
    channels: Vec<Channel>,
    users: Vec<String>,
    user_index: HashMap<String, UserId>,
    message_index: HashMap<String, usize>,
    references: ReferenceIndex,
}

/// Messages surrounding a targeted message in its channel.
#[derive(Debug, Clone, Copy)]
pub struct ContextPeriod<'c> {
    pub target: &'c Message,
    pub past: &'c [Message],
    pub future: &'c [Message],
    pub requested_size: usize,
}

impl<'c> ContextPeriod<'c> {
    pub fn len(&self) -> usize {
        self.past.len() + 1 + self.future.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// All messages in chronological order.
    pub fn messages(&self) -> impl Iterator<Item = &'c Message> + Clone {
        self.past
            .iter()
            .chain(std::iter::once(self.target))
            .chain(self.future.iter())
    }
}

/// Builder used by the parser and the synthetic generator.
#[derive(Debug, Default)]
pub struct CorpusBuilder {
    records: Vec<RawRecord>,
    declared_users: Vec<String>,
}

#[derive(Debug)]
struct RawRecord {
    line: usize,
    id: String,
    channel: String,
    seq: u64,
    author: String,
    label: Label,
    text: String,
}

impl CorpusBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, id: &str, channel: &str, seq: u64, author: &str, label: Label, text: &str) {
        let line = self.records.len() + 1;
        self.records.push(RawRecord {
            line,
            id: id.to_string(),
            channel: channel.to_string(),
            seq,
            author: author.to_string(),
            label,
            text: text.to_string(),
        });
    }

    pub fn declare_user(&mut self, name: &str) {
        self.declared_users.push(name.to_string());
    }

    pub fn build(self) -> Result<Corpus> {
        let mut users: Vec<String> = Vec::new();
        let mut user_index: HashMap<String, UserId> = HashMap::new();
        let mut intern = |name: &str| -> UserId {
            if let Some(&id) = user_index.get(name) {
                return id;
            }
            let id = UserId(users.len() as u32);
            users.push(name.to_string());
            user_index.insert(name.to_string(), id);
            id
        };

        let mut channel_order: Vec<String> = Vec::new();
        let mut channel_ids: HashMap<String, usize> = HashMap::new();
        let mut grouped: Vec<Vec<(usize, Message)>> = Vec::new();
        for rec in self.records {
            if rec.author.is_empty() {
                return Err(Error::Parse { line: rec.line, reason: "empty author".into() });
            }
            let ch = *channel_ids.entry(rec.channel.clone()).or_insert_with(|| {
                channel_order.push(rec.channel.clone());
                grouped.push(Vec::new());
                channel_order.len() - 1
            });
            let author = intern(&rec.author);
            grouped[ch].push((
                rec.line,
                Message {
                    id: rec.id,
                    channel: ChannelId(ch as u32),
                    seq: rec.seq,
                    author,
                    text: rec.text,
                    label: rec.label,
                },
            ));
        }
        for name in &self.declared_users {
            if !name.is_empty() {
                intern(name);
            }
        }

        let mut messages = Vec::new();
        let mut channels = Vec::with_capacity(grouped.len());
        let mut message_index = HashMap::new();
        for (ch, mut msgs) in grouped.into_iter().enumerate() {
            msgs.sort_by_key(|(_, m)| m.seq);
            for pair in msgs.windows(2) {
                if pair[0].1.seq == pair[1].1.seq {
                    return Err(Error::DuplicatePosition {
                        channel: channel_order[ch].clone(),
                        seq: pair[0].1.seq,
                    });
                }
            }
            let start = messages.len();
            for (line, m) in msgs {
                if message_index.insert(m.id.clone(), messages.len()).is_some() {
                    let _ = line;
                    return Err(Error::DuplicateMessage(m.id));
                }
                messages.push(m);
            }
            channels.push(Channel { name: channel_order[ch].clone(), start, end: messages.len() });
        }

        let references = ReferenceIndex::new(&users);
        Ok(Corpus { messages, channels, users, user_index, message_index, references })
    }
}

impl Corpus {
    pub fn empty() -> Corpus {
        CorpusBuilder::new().build().expect("empty corpus is valid")
    }

    pub fn messages(&self) -> &[Message] {
        &self.messages
    }

    pub fn message_count(&self) -> usize {
        self.messages.len()
    }

    pub fn user_count(&self) -> usize {
        self.users.len()
    }

    pub fn channel_count(&self) -> usize {
        self.channels.len()
    }

    pub fn channel_name(&self, channel: ChannelId) -> &str {
        &self.channels[channel.0 as usize].name
    }

    /// Messages of one channel, seq-sorted.
    pub fn channel_messages(&self, channel: ChannelId) -> &[Message] {
        let c = &self.channels[channel.0 as usize];
        &self.messages[c.start..c.end]
    }

    pub fn user_name(&self, user: UserId) -> &str {
        &self.users[user.0 as usize]
    }

    pub fn user_id(&self, name: &str) -> Option<UserId> {
        self.user_index.get(name).copied()
    }

    pub fn users(&self) -> impl Iterator<Item = (UserId, &str)> {
        self.users.iter().enumerate().map(|(i, n)| (UserId(i as u32), n.as_str()))
    }

    pub fn message(&self, id: &str) -> Option<&Message> {
        self.message_index.get(id).map(|&i| &self.messages[i])
    }

    /// The context period of `size` messages centred on `target_id`; the
    /// budget includes the target, with the extra message of an odd split
    /// going to the past. Truncates at channel boundaries.
    pub fn context_period(&self, target_id: &str, size: usize) -> Result<ContextPeriod<'_>> {
        if size == 0 {
            return Err(Error::InvalidArgument("context size must be at least 1".into()));
        }
        let &pos = self
            .message_index
            .get(target_id)
            .ok_or_else(|| Error::UnknownMessage(target_id.to_string()))?;
        let target = &self.messages[pos];
        let ch = &self.channels[target.channel.0 as usize];
        let past_budget = size / 2; // ceil((size - 1) / 2)
        let future_budget = (size - 1) / 2;
        let past_start = pos.saturating_sub(past_budget).max(ch.start);
        let future_end = (pos + 1 + future_budget).min(ch.end);
        Ok(ContextPeriod {
            target,
            past: &self.messages[past_start..pos],
            future: &self.messages[pos + 1..future_end],
            requested_size: size,
        })
    }

    /// Users directly referenced in the message text, by first mention.
    pub fn references(&self, message: &Message) -> Vec<UserId> {
        self.references.detect(&message.text, Some(message.author))
    }

    /// Serialises the corpus back to the line-record format, channel by
    /// channel.
    pub fn to_records(&self) -> String {
        let mut out = String::new();
        for m in &self.messages {
            let _ = writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}\t{}",
                m.id,
                self.channel_name(m.channel),
                m.seq,
                self.user_name(m.author),
                m.label.code(),
                escape_text(&m.text)
            );
        }
        out
    }
}

/// Parses the line-record format. Blank lines are skipped.
pub fn parse_corpus<R: BufRead>(input: R) -> Result<Corpus> {
    parse_corpus_with_users(input, std::iter::empty::<String>())
}

/// Parses a corpus together with a sidecar user list.
pub fn parse_corpus_with_users<R, I>(input: R, users: I) -> Result<Corpus>
where
    R: BufRead,
    I: IntoIterator<Item = String>,
{
    let mut builder = CorpusBuilder::new();
    for (i, line) in input.lines().enumerate() {
        let lineno = i + 1;
        let line = line.map_err(|e| Error::Parse { line: lineno, reason: e.to_string() })?;
        let line = line.strip_suffix('\r').unwrap_or(&line);
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 6 {
            return Err(Error::Parse {
                line: lineno,
                reason: format!("expected 6 tab-separated fields, found {}", fields.len()),
            });
        }
        let bad = |reason: &str| Error::Parse { line: lineno, reason: reason.to_string() };
        if fields[0].is_empty() {
            return Err(bad("empty message id"));
        }
        if fields[1].is_empty() {
            return Err(bad("empty channel"));
        }
        let seq: u64 = fields[2].parse().map_err(|_| bad("seq is not a non-negative integer"))?;
        if fields[3].is_empty() {
            return Err(bad("empty author"));
        }
        let label = Label::from_code(fields[4]).ok_or_else(|| bad("label must be A, N or U"))?;
        let text = unescape_text(fields[5]);
        builder.records.push(RawRecord {
            line: lineno,
            id: fields[0].to_string(),
            channel: fields[1].to_string(),
            seq,
            author: fields[3].to_string(),
            label,
            text,
        });
    }
    for u in users {
        let u = u.trim().to_string();
        if !u.is_empty() {
            builder.declare_user(&u);
        }
    }
    builder.build()
}

pub fn escape_text(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            '\\' => out.push_str("\\\\"),
            '\t' => out.push_str("\\t"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            c => out.push(c),
        }
    }
    out
}

pub fn unescape_text(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    let mut chars = text.chars();
    while let Some(c) = chars.next() {
        if c != '\\' {
            out.push(c);
            continue;
        }
        match chars.next() {
            Some('t') => out.push('\t'),
            Some('n') => out.push('\n'),
            Some('r') => out.push('\r'),
            Some('\\') => out.push('\\'),
            Some(other) => {
                out.push('\\');
                out.push(other);
            }
            None => out.push('\\'),
        }
    }
    out
}

fn is_word_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_'
}

/// Case-insensitive whole-token lookup of user names.
#[derive(Debug, Clone, Default)]
struct ReferenceIndex {
    /// Names made only of word characters, keyed by lowercase form.
    simple: HashMap<String, UserId>,
    /// Names containing other characters, matched by scanning.
    complex: Vec<(Vec<char>, UserId)>,
}

impl ReferenceIndex {
    fn new(users: &[String]) -> Self {
        let mut idx = ReferenceIndex::default();
        for (i, name) in users.iter().enumerate() {
            let id = UserId(i as u32);
            let lower = name.to_lowercase();
            if lower.is_empty() {
                continue;
            }
            if lower.chars().all(is_word_char) {
                // first declared wins when two names differ only by case
                idx.simple.entry(lower).or_insert(id);
            } else {
                idx.complex.push((lower.chars().collect(), id));
            }
        }
        idx
    }

    fn detect(&self, text: &str, exclude: Option<UserId>) -> Vec<UserId> {
        let lower: Vec<char> = text.to_lowercase().chars().collect();
        // (position, -length, user)
        let mut hits: Vec<(usize, isize, UserId)> = Vec::new();
        let mut i = 0;
        while i < lower.len() {
            if !is_word_char(lower[i]) {
                i += 1;
                continue;
            }
            let start = i;
            while i < lower.len() && is_word_char(lower[i]) {
                i += 1;
            }
            let token: String = lower[start..i].iter().collect();
            if let Some(&u) = self.simple.get(&token) {
                hits.push((start, -((i - start) as isize), u));
            }
        }
        for (name, u) in &self.complex {
            if let Some(pos) = find_token(&lower, name) {
                hits.push((pos, -(name.len() as isize), *u));
            }
        }
        hits.sort();
        let mut out: Vec<UserId> = Vec::new();
        for (_, _, u) in hits {
            if Some(u) != exclude && !out.contains(&u) {
                out.push(u);
            }
        }
        out
    }
}

fn find_token(text: &[char], name: &[char]) -> Option<usize> {
    if name.len() > text.len() {
        return None;
    }
    (0..=text.len() - name.len()).find(|&p| {
        text[p..p + name.len()] == *name
            && (p == 0 || !is_word_char(text[p - 1]) || !is_word_char(name[0]))
            && (p + name.len() == text.len()
                || !is_word_char(text[p + name.len()])
                || !is_word_char(name[name.len() - 1]))
    })
}

/// Users of `users` mentioned as whole tokens in the message text, ordered by
/// first occurrence, excluding the author.
pub fn detect_references(message: &Message, users: &[(UserId, &str)]) -> Vec<UserId> {
    let names: Vec<String> = {
        let max = users.iter().map(|(u, _)| u.0 as usize + 1).max().unwrap_or(0);
        let mut v = vec![String::new(); max];
        for (u, n) in users {
            v[u.0 as usize] = n.to_string();
        }
        v
    };
    ReferenceIndex::new(&names).detect(&message.text, Some(message.author))
}
