//! Rewrite rules, the rule file format, scope selection and compilation.
//!
//! Rule files are line oriented:
//!
//! ```text
//! # comment
//! rule c1r3.d [cat:1] : d -> dd ;
//! rule c1r7 [cat:1] [scope: lang: Tamil,Telugu] : z -> s ;
//! rule c1r6 [cat:1] [status: discarded] : l -> @ l / _ # ;
//! ```
//!
//! Attributes are `[cat:1|2|3]`, `[scope: universal | groups g1,g4 | lang: A,B]`
//! (or the shorthands `[groups: ...]`, `[lang: ...]`) and
//! `[status: active|unresolved|discarded]`. In a language list, a leading `*`
//! (the native-language-specific marker) is accepted and `all` expands to
//! every known language. Contexts are a single phone or the boundary `#`.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::path::Path;

use serde::Serialize;

use crate::error::{read_to_string, Error, Result};
use crate::languages::{self, LANGUAGES};
use crate::phoneset::{Phone, PhoneSeq, SymbolTable, BOUNDARY};

/// Single-symbol rule context.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(untagged)]
pub enum Context {
    Boundary,
    Phone(Phone),
}

impl Context {
    pub fn symbol(&self) -> &str {
        match self {
            Context::Boundary => BOUNDARY,
            Context::Phone(p) => p.as_str(),
        }
    }

    /// Context of `input` at `pos`, with a virtual boundary on both ends.
    pub fn at(input: &[Phone], pos: isize) -> Context {
        if pos < 0 || pos as usize >= input.len() {
            Context::Boundary
        } else {
            Context::Phone(input[pos as usize].clone())
        }
    }

    pub fn matches(&self, input: &[Phone], pos: isize) -> bool {
        let outside = pos < 0 || pos as usize >= input.len();
        match self {
            Context::Boundary => outside,
            Context::Phone(p) => !outside && input[pos as usize] == *p,
        }
    }
}

impl fmt::Display for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase", tag = "kind", content = "members")]
pub enum Scope {
    Universal,
    Groups(BTreeSet<u8>),
    Languages(BTreeSet<String>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Category {
    #[serde(rename = "1")]
    One,
    #[serde(rename = "2")]
    Two,
    #[serde(rename = "3")]
    Three,
}

impl Category {
    pub fn number(self) -> u8 {
        match self {
            Category::One => 1,
            Category::Two => 2,
            Category::Three => 3,
        }
    }

    pub fn from_number(n: u8) -> Option<Self> {
        match n {
            1 => Some(Category::One),
            2 => Some(Category::Two),
            3 => Some(Category::Three),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    #[default]
    Active,
    /// Listed without a target; never applied.
    Unresolved,
    /// Withdrawn after validation; never applied.
    Discarded,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Active => "active",
            Status::Unresolved => "unresolved",
            Status::Discarded => "discarded",
        }
    }
}

/// Identity of a rule for set comparisons: what it rewrites, ignoring id,
/// scope, category and status.
pub type RuleIdentity = (PhoneSeq, PhoneSeq, Option<Context>, Option<Context>);

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RewriteRule {
    pub id: String,
    pub source: PhoneSeq,
    pub target: PhoneSeq,
    pub left: Option<Context>,
    pub right: Option<Context>,
    pub scope: Scope,
    pub category: Option<Category>,
    pub status: Status,
}

impl RewriteRule {
    /// Context-free, universal, active rule.
    pub fn new(id: impl Into<String>, source: PhoneSeq, target: PhoneSeq) -> Self {
        RewriteRule {
            id: id.into(),
            source,
            target,
            left: None,
            right: None,
            scope: Scope::Universal,
            category: None,
            status: Status::Active,
        }
    }

    pub fn with_context(mut self, left: Option<Context>, right: Option<Context>) -> Self {
        self.left = left;
        self.right = right;
        self
    }

    pub fn with_scope(mut self, scope: Scope) -> Self {
        self.scope = scope;
        self
    }

    pub fn with_category(mut self, category: Option<Category>) -> Self {
        self.category = category;
        self
    }

    pub fn with_status(mut self, status: Status) -> Self {
        self.status = status;
        self
    }

    /// Checks the structural invariants. The message names the problem.
    pub fn check(&self) -> std::result::Result<(), String> {
        if self.source.is_empty() && self.target.is_empty() {
            return Err(format!(
                "rule `{}` has an empty source and an empty target",
                self.id
            ));
        }
        if self.source.is_empty() && self.left.is_none() && self.right.is_none() {
            return Err(format!("insertion rule `{}` needs a context", self.id));
        }
        if self
            .source
            .iter()
            .chain(self.target.iter())
            .any(Phone::is_boundary)
        {
            return Err(format!(
                "rule `{}` uses `{BOUNDARY}` outside a context",
                self.id
            ));
        }
        Ok(())
    }

    /// Table slot of the rule: the id up to the first `.`.
    pub fn slot(&self) -> &str {
        self.id.split('.').next().unwrap_or(&self.id)
    }

    pub fn identity(&self) -> RuleIdentity {
        (
            self.source.clone(),
            self.target.clone(),
            self.left.clone(),
            self.right.clone(),
        )
    }

    pub fn is_applicable(&self) -> bool {
        self.status == Status::Active
    }
}

/// Renders the rule as one line of the rule file format.
impl fmt::Display for RewriteRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rule {}", self.id)?;
        if let Some(c) = self.category {
            write!(f, " [cat:{}]", c.number())?;
        }
        match &self.scope {
            Scope::Universal => {}
            Scope::Groups(gs) => {
                let list: Vec<String> = gs.iter().map(|g| format!("g{g}")).collect();
                write!(f, " [scope: groups {}]", list.join(","))?;
            }
            Scope::Languages(ls) => {
                let list: Vec<&str> = ls.iter().map(String::as_str).collect();
                write!(f, " [scope: lang: {}]", list.join(","))?;
            }
        }
        if self.status != Status::Active {
            write!(f, " [status: {}]", self.status.name())?;
        }
        f.write_str(" :")?;
        for p in self.source.iter() {
            write!(f, " {p}")?;
        }
        f.write_str(" ->")?;
        for p in self.target.iter() {
            write!(f, " {p}")?;
        }
        if self.left.is_some() || self.right.is_some() {
            f.write_str(" /")?;
            if let Some(l) = &self.left {
                write!(f, " {l}")?;
            }
            f.write_str(" _")?;
            if let Some(r) = &self.right {
                write!(f, " {r}")?;
            }
        }
        f.write_str(" ;")
    }
}

/// Filter for [`RuleSet::select`].
///
/// Universal rules always match. Group-scoped rules match when one of their
/// groups is queried directly or through a queried language. Language-scoped
/// rules match when one of their languages is queried directly or lies in a
/// queried group.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RuleQuery {
    pub groups: BTreeSet<u8>,
    pub languages: BTreeSet<String>,
    pub categories: Option<BTreeSet<Category>>,
    pub include_unresolved: bool,
    pub include_discarded: bool,
}

impl RuleQuery {
    pub fn universal() -> Self {
        RuleQuery::default()
    }

    pub fn language(mut self, name: impl Into<String>) -> Self {
        self.languages.insert(name.into());
        self
    }

    pub fn group(mut self, group: u8) -> Self {
        self.groups.insert(group);
        self
    }

    pub fn categories(mut self, cats: impl IntoIterator<Item = Category>) -> Self {
        self.categories = Some(cats.into_iter().collect());
        self
    }
}

struct ResolvedQuery {
    groups: BTreeSet<u8>,
    languages: BTreeSet<String>,
}

impl ResolvedQuery {
    fn covers(&self, scope: &Scope) -> bool {
        match scope {
            Scope::Universal => true,
            Scope::Groups(gs) => !gs.is_disjoint(&self.groups),
            Scope::Languages(ls) => !ls.is_disjoint(&self.languages),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct RuleSet {
    pub name: String,
    pub description: String,
    rules: Vec<RewriteRule>,
}

impl RuleSet {
    pub fn new(name: impl Into<String>) -> Self {
        RuleSet {
            name: name.into(),
            ..RuleSet::default()
        }
    }

    pub fn from_rules(name: impl Into<String>, rules: Vec<RewriteRule>) -> Result<Self> {
        let mut set = RuleSet::new(name);
        for r in rules {
            set.push(r)?;
        }
        Ok(set)
    }

    pub fn load(path: impl AsRef<Path>, table: &SymbolTable) -> Result<Self> {
        let path = path.as_ref();
        let mut set = Self::parse(&read_to_string(path)?, table)?;
        set.name = path.display().to_string();
        Ok(set)
    }

    /// Parses a rule file, validating every symbol against `table`.
    pub fn parse(text: &str, table: &SymbolTable) -> Result<Self> {
        let mut set = RuleSet::new("");
        let mut seen = HashSet::new();
        let mut description = Vec::new();
        for (idx, line) in text.lines().enumerate() {
            let line_no = idx + 1;
            if set.rules.is_empty() {
                if let Some(c) = line.trim().strip_prefix('#') {
                    description.push(c.trim().to_string());
                }
            }
            let Some(rule) = parse_rule_line(line, line_no, table)? else {
                continue;
            };
            if !seen.insert(rule.id.clone()) {
                return Err(Error::Syntax {
                    line: line_no,
                    column: line
                        .find(&rule.id)
                        .map_or(1, |b| line[..b].chars().count() + 1),
                    msg: format!("duplicate rule id `{}`", rule.id),
                });
            }
            set.rules.push(rule);
        }
        set.description = description.join(" ").trim().to_string();
        Ok(set)
    }

    pub fn push(&mut self, rule: RewriteRule) -> Result<()> {
        if self.rules.iter().any(|r| r.id == rule.id) {
            return Err(Error::DuplicateRuleId(rule.id));
        }
        rule.check().map_err(Error::InvalidRule)?;
        self.rules.push(rule);
        Ok(())
    }

    pub fn rules(&self) -> &[RewriteRule] {
        &self.rules
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn get(&self, id: &str) -> Option<&RewriteRule> {
        self.rules.iter().find(|r| r.id == id)
    }

    pub fn active_count(&self) -> usize {
        self.rules.iter().filter(|r| r.is_applicable()).count()
    }

    /// Layers `other` over this set: a rule with an existing id replaces it
    /// in place, new ids are appended in `other`'s order.
    pub fn merge(&mut self, other: &RuleSet) {
        for rule in &other.rules {
            match self.rules.iter_mut().find(|r| r.id == rule.id) {
                Some(slot) => *slot = rule.clone(),
                None => self.rules.push(rule.clone()),
            }
        }
    }

    /// Rules whose scope covers `query`, in file order.
    pub fn select(&self, query: &RuleQuery) -> Result<RuleSet> {
        let mut groups = BTreeSet::new();
        let mut languages = BTreeSet::new();
        for &g in &query.groups {
            if !languages::is_group(g) {
                return Err(Error::UnknownGroup(g));
            }
            groups.insert(g);
            languages.extend(languages::in_group(g).map(|l| l.name.to_string()));
        }
        for name in &query.languages {
            let lang = languages::find(name).ok_or_else(|| Error::UnknownLanguage(name.clone()))?;
            groups.insert(lang.group);
            languages.insert(lang.name.to_string());
        }
        let resolved = ResolvedQuery { groups, languages };
        let rules = self
            .rules
            .iter()
            .filter(|r| match r.status {
                Status::Active => true,
                Status::Unresolved => query.include_unresolved,
                Status::Discarded => query.include_discarded,
            })
            .filter(|r| match &query.categories {
                None => true,
                Some(cats) => r.category.is_some_and(|c| cats.contains(&c)),
            })
            .filter(|r| resolved.covers(&r.scope))
            .cloned()
            .collect();
        Ok(RuleSet {
            name: self.name.clone(),
            description: self.description.clone(),
            rules,
        })
    }

    pub fn compile(&self) -> CompiledRuleSet {
        CompiledRuleSet::new(self)
    }

    /// The whole set in rule file format.
    pub fn to_dsl(&self) -> String {
        let mut out = String::new();
        for r in &self.rules {
            out.push_str(&r.to_string());
            out.push('\n');
        }
        out
    }
}

/// Active rules indexed by their first source phone.
///
/// Insertion rules (empty source) sit in a separate list consulted at every
/// position. Indices preserve file order for tie-breaking.
#[derive(Clone, Debug, Default)]
pub struct CompiledRuleSet {
    rules: Vec<RewriteRule>,
    by_anchor: HashMap<Phone, Vec<usize>>,
    insertions: Vec<usize>,
}

impl CompiledRuleSet {
    pub fn new(set: &RuleSet) -> Self {
        let rules: Vec<RewriteRule> = set
            .rules
            .iter()
            .filter(|r| r.is_applicable())
            .cloned()
            .collect();
        let mut by_anchor: HashMap<Phone, Vec<usize>> = HashMap::new();
        let mut insertions = Vec::new();
        for (i, r) in rules.iter().enumerate() {
            match r.source.first() {
                Some(first) => by_anchor.entry(first.clone()).or_default().push(i),
                None => insertions.push(i),
            }
        }
        CompiledRuleSet {
            rules,
            by_anchor,
            insertions,
        }
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    /// Compiled rules in file order.
    pub fn rules(&self) -> &[RewriteRule] {
        &self.rules
    }

    pub fn rule(&self, index: usize) -> &RewriteRule {
        &self.rules[index]
    }

    /// Indices of rules whose source starts with `phone`, in file order.
    pub fn anchored_at(&self, phone: &Phone) -> &[usize] {
        self.by_anchor.get(phone).map_or(&[], Vec::as_slice)
    }

    pub fn insertions(&self) -> &[usize] {
        &self.insertions
    }

    /// Lists the compiled rules as a rule set.
    pub fn decompile(&self) -> RuleSet {
        RuleSet {
            name: String::new(),
            description: String::new(),
            rules: self.rules.clone(),
        }
    }
}

// ---------------------------------------------------------------------------
// rule file parser

struct Cursor<'a> {
    line: &'a str,
    pos: usize,
    line_no: usize,
}

impl<'a> Cursor<'a> {
    fn column(&self, byte: usize) -> usize {
        self.line[..byte].chars().count() + 1
    }

    fn error(&self, byte: usize, msg: impl Into<String>) -> Error {
        Error::Syntax {
            line: self.line_no,
            column: self.column(byte),
            msg: msg.into(),
        }
    }

    fn rest(&self) -> &'a str {
        &self.line[self.pos..]
    }

    fn skip_ws(&mut self) {
        let rest = self.rest();
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn eat(&mut self, s: &str) -> bool {
        if self.rest().starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn take_while(&mut self, f: impl Fn(char) -> bool) -> &'a str {
        let rest = self.rest();
        let end = rest.find(|c| !f(c)).unwrap_or(rest.len());
        self.pos += end;
        &rest[..end]
    }
}

fn is_id_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || matches!(c, '_' | '.' | '-')
}

#[derive(Default)]
struct Attrs {
    category: Option<Category>,
    scope: Option<Scope>,
    status: Option<Status>,
}

fn parse_rule_line(line: &str, line_no: usize, table: &SymbolTable) -> Result<Option<RewriteRule>> {
    let mut cur = Cursor {
        line,
        pos: 0,
        line_no,
    };
    cur.skip_ws();
    if cur.rest().is_empty() || cur.rest().starts_with('#') {
        return Ok(None);
    }
    let kw = cur.pos;
    if !cur.eat("rule") || !cur.rest().starts_with(char::is_whitespace) {
        return Err(cur.error(kw, "expected `rule`"));
    }
    cur.skip_ws();
    let id_at = cur.pos;
    let id = cur.take_while(is_id_char);
    if id.is_empty() {
        return Err(cur.error(id_at, "expected a rule id"));
    }

    let mut attrs = Attrs::default();
    loop {
        cur.skip_ws();
        if cur.eat(":") {
            break;
        }
        let at = cur.pos;
        if !cur.eat("[") {
            return Err(cur.error(at, "expected `[` or `:` after the rule id"));
        }
        let Some(close) = cur.rest().find(']') else {
            return Err(cur.error(at, "unterminated `[`"));
        };
        let body = &cur.rest()[..close];
        parse_attr(body, &mut attrs).map_err(|msg| cur.error(at, msg))?;
        cur.pos += close + 1;
    }

    let body_at = cur.pos;
    let Some(semi) = cur.rest().find(';') else {
        return Err(cur.error(line.len(), "missing `;`"));
    };
    let body = &cur.rest()[..semi];
    let trailer = cur.rest()[semi + 1..].trim();
    if !trailer.is_empty() && !trailer.starts_with('#') {
        return Err(cur.error(body_at + semi + 1, "unexpected text after `;`"));
    }

    // Tokens of the body with their byte offsets in `line`.
    let tokens: Vec<(usize, &str)> = body
        .split_whitespace()
        .map(|t| (body_at + (t.as_ptr() as usize - body.as_ptr() as usize), t))
        .collect();
    let arrows = positions_of(&tokens, "->");
    let [arrow] = arrows[..] else {
        return Err(cur.error(body_at, "expected exactly one `->`"));
    };
    let slash = tokens.iter().position(|(_, t)| *t == "/");
    if slash.is_some_and(|s| s < arrow) {
        return Err(cur.error(tokens[slash.unwrap()].0, "context before `->`"));
    }
    let target_end = slash.unwrap_or(tokens.len());

    let phone = |(at, tok): (usize, &str)| -> Result<Phone> {
        if table.is_phone(tok) {
            Ok(Phone::new(tok))
        } else if tok == BOUNDARY {
            Err(cur.error(at, format!("`{BOUNDARY}` is only allowed as a context")))
        } else {
            Err(cur.error(at, format!("unknown phone symbol `{tok}`")))
        }
    };
    let source: PhoneSeq = tokens[..arrow]
        .iter()
        .copied()
        .map(phone)
        .collect::<Result<_>>()?;
    let target: PhoneSeq = tokens[arrow + 1..target_end]
        .iter()
        .copied()
        .map(phone)
        .collect::<Result<_>>()?;

    let (mut left, mut right) = (None, None);
    if let Some(s) = slash {
        let ctx = &tokens[s + 1..];
        let unders = positions_of(ctx, "_");
        let [u] = unders[..] else {
            return Err(cur.error(tokens[s].0, "context needs exactly one `_`"));
        };
        if u > 1 || ctx.len() - u - 1 > 1 {
            return Err(cur.error(tokens[s].0, "contexts are single symbols"));
        }
        let context = |(at, tok): (usize, &str)| -> Result<Context> {
            if tok == BOUNDARY {
                Ok(Context::Boundary)
            } else {
                phone((at, tok)).map(Context::Phone)
            }
        };
        left = ctx[..u].first().copied().map(context).transpose()?;
        right = ctx[u + 1..].first().copied().map(context).transpose()?;
        if left.is_none() && right.is_none() {
            return Err(cur.error(tokens[s].0, "empty context after `/`"));
        }
    }

    let rule = RewriteRule {
        id: id.to_string(),
        source,
        target,
        left,
        right,
        scope: attrs.scope.unwrap_or(Scope::Universal),
        category: attrs.category,
        status: attrs.status.unwrap_or_default(),
    };
    rule.check().map_err(|msg| cur.error(body_at, msg))?;
    Ok(Some(rule))
}

fn parse_attr(body: &str, attrs: &mut Attrs) -> std::result::Result<(), String> {
    let (key, value) = body
        .split_once(':')
        .ok_or_else(|| format!("attribute `[{body}]` needs `key: value`"))?;
    let value = value.trim();
    match key.trim() {
        "cat" | "category" => {
            let n: u8 = value
                .parse()
                .map_err(|_| format!("bad category `{value}`"))?;
            attrs.category = Some(
                Category::from_number(n).ok_or_else(|| format!("category {n} is not 1, 2 or 3"))?,
            );
        }
        "status" => {
            attrs.status = Some(match value {
                "active" => Status::Active,
                "unresolved" => Status::Unresolved,
                "discarded" => Status::Discarded,
                other => return Err(format!("unknown status `{other}`")),
            })
        }
        "scope" => attrs.scope = Some(parse_scope(value)?),
        "lang" | "langs" | "language" | "languages" => attrs.scope = Some(parse_languages(value)?),
        "group" | "groups" => attrs.scope = Some(parse_groups(value)?),
        other => return Err(format!("unknown attribute `{other}`")),
    }
    Ok(())
}

fn parse_scope(value: &str) -> std::result::Result<Scope, String> {
    if value == "universal" {
        return Ok(Scope::Universal);
    }
    for kw in ["groups", "group"] {
        if let Some(rest) = value.strip_prefix(kw) {
            return parse_groups(rest.trim_start_matches(':'));
        }
    }
    for kw in ["languages", "language", "langs", "lang"] {
        if let Some(rest) = value.strip_prefix(kw) {
            return parse_languages(rest.trim_start_matches(':'));
        }
    }
    Err(format!("unknown scope `{value}`"))
}

fn parse_groups(list: &str) -> std::result::Result<Scope, String> {
    let mut groups = BTreeSet::new();
    for item in list.split(',').map(str::trim) {
        let digits = item.strip_prefix('g').unwrap_or(item);
        let g: u8 = digits.parse().map_err(|_| format!("bad group `{item}`"))?;
        if !languages::is_group(g) {
            return Err(format!("unknown group {g} (expected 1-5)"));
        }
        groups.insert(g);
    }
    Ok(Scope::Groups(groups))
}

fn parse_languages(list: &str) -> std::result::Result<Scope, String> {
    let mut langs = BTreeSet::new();
    for item in list.split(',').map(str::trim) {
        let name = item.trim_start_matches('*').trim();
        if name.eq_ignore_ascii_case("all") {
            langs.extend(LANGUAGES.iter().map(|l| l.name.to_string()));
            continue;
        }
        let lang = languages::find(name).ok_or_else(|| format!("unknown language `{name}`"))?;
        langs.insert(lang.name.to_string());
    }
    if langs.is_empty() {
        return Err("empty language list".to_string());
    }
    Ok(Scope::Languages(langs))
}

fn positions_of(tokens: &[(usize, &str)], word: &str) -> Vec<usize> {
    tokens
        .iter()
        .enumerate()
        .filter(|(_, (_, t))| *t == word)
        .map(|(i, _)| i)
        .collect()
}
