//! The three-station GHZ setup: labels, the parity consistency rule, the
//! abstract event/spread family, and an explicit finite model realizing it.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::document::{ModelDocument, ResolvedModel, SpreadSpec};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Station {
    One,
    Two,
    Three,
}

impl Station {
    pub const ALL: [Station; 3] = [Station::One, Station::Two, Station::Three];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn number(self) -> usize {
        self.index() + 1
    }
}

impl fmt::Display for Station {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.number())
    }
}

/// Measurement type at a station.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Axis {
    X,
    Y,
}

impl Axis {
    pub const ALL: [Axis; 2] = [Axis::X, Axis::Y];

    pub fn letter(self) -> char {
        match self {
            Axis::X => 'x',
            Axis::Y => 'y',
        }
    }
}

/// Outcome type, ordered `-` before `+`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    pub const ALL: [Sign; 2] = [Sign::Minus, Sign::Plus];

    pub fn value(self) -> i8 {
        match self {
            Sign::Minus => -1,
            Sign::Plus => 1,
        }
    }

    pub fn from_value(v: i8) -> Sign {
        if v < 0 {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Minus => '-',
            Sign::Plus => '+',
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Minus => Sign::Plus,
            Sign::Plus => Sign::Minus,
        }
    }

    fn from_bit(bit: u64) -> Sign {
        if bit == 0 {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }
}

pub fn parse_signs(text: &str) -> Result<[Sign; 3]> {
    let chars: Vec<char> = text.chars().collect();
    if chars.len() != 3 {
        return Err(Error::Parse(text.to_string()));
    }
    let mut out = [Sign::Plus; 3];
    for (slot, c) in out.iter_mut().zip(chars) {
        *slot = match c {
            '+' => Sign::Plus,
            '-' => Sign::Minus,
            _ => return Err(Error::Parse(text.to_string())),
        };
    }
    Ok(out)
}

pub fn format_signs(signs: &[Sign]) -> String {
    signs.iter().map(|s| s.symbol()).collect()
}

/// Measurement types at stations 1, 2, 3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Context(pub [Axis; 3]);

impl Context {
    /// All eight contexts, `xxx` first, lexicographic with `x < y`.
    pub fn all() -> [Context; 8] {
        let mut out = [Context([Axis::X; 3]); 8];
        for (i, slot) in out.iter_mut().enumerate() {
            let pick = |bit: usize| if i & bit == 0 { Axis::X } else { Axis::Y };
            *slot = Context([pick(4), pick(2), pick(1)]);
        }
        out
    }

    pub fn axis(self, s: Station) -> Axis {
        self.0[s.index()]
    }

    pub fn is_mixed(self) -> bool {
        self.0.iter().any(|&a| a != self.0[0])
    }

    /// The four contexts appearing in the no-common-cause theorem.
    pub fn theorem_family() -> Vec<Context> {
        ["xxx", "xxy", "xyy", "xyx"]
            .iter()
            .map(|s| s.parse().expect("static"))
            .collect()
    }

    /// The four contexts whose three-factor products the GHZ state fixes.
    pub fn operator_family() -> Vec<Context> {
        ["xyy", "yxy", "yyx", "xxx"]
            .iter()
            .map(|s| s.parse().expect("static"))
            .collect()
    }

    /// Parses a comma-separated list such as `xxx,xxy`.
    pub fn parse_list(text: &str) -> Result<Vec<Context>> {
        text.split(',')
            .map(|s| s.trim().parse())
            .collect()
    }

    pub fn vectors(self) -> impl Iterator<Item = GhzVector> {
        (0..8u64).map(move |bits| GhzVector {
            context: self,
            signs: [
                Sign::from_bit(bits & 4),
                Sign::from_bit(bits & 2),
                Sign::from_bit(bits & 1),
            ],
        })
    }
}

impl FromStr for Context {
    type Err = Error;

    fn from_str(s: &str) -> Result<Context> {
        let chars: Vec<char> = s.chars().collect();
        if chars.len() != 3 {
            return Err(Error::Parse(s.to_string()));
        }
        let mut axes = [Axis::X; 3];
        for (slot, c) in axes.iter_mut().zip(chars) {
            *slot = match c {
                'x' => Axis::X,
                'y' => Axis::Y,
                _ => return Err(Error::Parse(s.to_string())),
            };
        }
        Ok(Context(axes))
    }
}

impl fmt::Display for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for a in self.0 {
            write!(f, "{}", a.letter())?;
        }
        Ok(())
    }
}

impl Serialize for Context {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// One of the twelve outcome events `a^s_j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OutcomeEvent {
    pub station: Station,
    pub axis: Axis,
    pub sign: Sign,
}

impl OutcomeEvent {
    pub const COUNT: usize = 12;

    /// Station-major, then axis, then sign.
    pub fn index(self) -> usize {
        self.station.index() * 4 + (self.axis as usize) * 2 + self.sign as usize
    }

    pub fn from_index(i: usize) -> OutcomeEvent {
        assert!(i < Self::COUNT);
        OutcomeEvent {
            station: Station::ALL[i / 4],
            axis: Axis::ALL[(i / 2) % 2],
            sign: Sign::ALL[i % 2],
        }
    }

    pub fn all() -> impl Iterator<Item = OutcomeEvent> {
        (0..Self::COUNT).map(OutcomeEvent::from_index)
    }

    pub fn sibling(self) -> OutcomeEvent {
        OutcomeEvent {
            sign: self.sign.flip(),
            ..self
        }
    }

    pub fn name(self) -> String {
        outcome_name(self.station, self.axis, self.sign)
    }
}

impl fmt::Display for OutcomeEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

pub fn initial_name(s: Station) -> String {
    format!("I_{s}")
}

pub fn stable_name(s: Station, a: Axis) -> String {
    format!("{}_{s}", a.letter())
}

pub fn outcome_name(s: Station, a: Axis, sign: Sign) -> String {
    format!("{}{}_{s}", a.letter(), sign.symbol())
}

/// A context together with one sign per station.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GhzVector {
    pub context: Context,
    pub signs: [Sign; 3],
}

impl GhzVector {
    pub fn new(context: Context, signs: [Sign; 3]) -> GhzVector {
        GhzVector { context, signs }
    }

    pub fn minus_count(&self) -> usize {
        self.signs.iter().filter(|&&s| s == Sign::Minus).count()
    }

    pub fn terms(&self) -> [OutcomeEvent; 3] {
        Station::ALL.map(|st| OutcomeEvent {
            station: st,
            axis: self.context.axis(st),
            sign: self.signs[st.index()],
        })
    }

    pub fn term_names(&self) -> Vec<String> {
        self.terms().iter().map(|t| t.name()).collect()
    }
}

impl fmt::Display for GhzVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.term_names().join(", "))
    }
}

impl Serialize for GhzVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Mixed axes with an even number of minuses, or unmixed axes with an odd
/// number of minuses.
pub fn parity_consistent(v: &GhzVector) -> bool {
    let odd = v.minus_count() % 2 == 1;
    if v.context.is_mixed() {
        !odd
    } else {
        odd
    }
}

/// The named events, spreads and 3-spreads of the scenario, with the parity
/// rule as consistency oracle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GhzStructure {
    pub initials: Vec<String>,
    pub stables: Vec<String>,
    pub outcomes: Vec<String>,
    pub spreads: BTreeMap<String, SpreadSpec>,
    pub nspreads: BTreeMap<String, Vec<String>>,
}

pub fn spread_name(s: Station) -> String {
    format!("sigma_{s}")
}

pub fn axis_spread_name(s: Station, a: Axis) -> String {
    format!("sigma^{}_{s}", a.letter())
}

pub fn star_spread_name(s: Station) -> String {
    format!("sigma*_{s}")
}

pub fn context_nspread_name(c: Context) -> String {
    format!("Sigma_{c}")
}

pub const SETTINGS_NSPREAD: &str = "Sigma_123";
pub const FULL_NSPREAD: &str = "Sigma*_123";

impl GhzStructure {
    pub fn consistent(&self, v: &GhzVector) -> bool {
        parity_consistent(v)
    }

    /// Outcome events of a context's 3-spread vectors, sign order `-`, `+`.
    pub fn context_vectors(&self, c: Context) -> Vec<GhzVector> {
        c.vectors().collect()
    }
}

pub fn build_abstract_structure() -> GhzStructure {
    let mut initials = Vec::new();
    let mut stables = Vec::new();
    let mut outcomes = Vec::new();
    let mut spreads = BTreeMap::new();
    for st in Station::ALL {
        initials.push(initial_name(st));
        for a in Axis::ALL {
            stables.push(stable_name(st, a));
            for sign in Sign::ALL {
                outcomes.push(outcome_name(st, a, sign));
            }
            spreads.insert(
                axis_spread_name(st, a),
                SpreadSpec {
                    initial: stable_name(st, a),
                    outcomes: Sign::ALL.iter().map(|&s| outcome_name(st, a, s)).collect(),
                },
            );
        }
        spreads.insert(
            spread_name(st),
            SpreadSpec {
                initial: initial_name(st),
                outcomes: Axis::ALL.iter().map(|&a| stable_name(st, a)).collect(),
            },
        );
        spreads.insert(
            star_spread_name(st),
            SpreadSpec {
                initial: initial_name(st),
                outcomes: Axis::ALL
                    .iter()
                    .flat_map(|&a| Sign::ALL.iter().map(move |&s| outcome_name(st, a, s)))
                    .collect(),
            },
        );
    }

    let mut nspreads = BTreeMap::new();
    nspreads.insert(
        SETTINGS_NSPREAD.to_string(),
        Station::ALL.iter().map(|&s| spread_name(s)).collect(),
    );
    nspreads.insert(
        FULL_NSPREAD.to_string(),
        Station::ALL.iter().map(|&s| star_spread_name(s)).collect(),
    );
    for c in Context::all() {
        nspreads.insert(
            context_nspread_name(c),
            Station::ALL
                .iter()
                .map(|&s| axis_spread_name(s, c.axis(s)))
                .collect(),
        );
    }

    GhzStructure {
        initials,
        stables,
        outcomes,
        spreads,
        nspreads,
    }
}

pub fn terminal_name(v: &GhzVector) -> String {
    format!("T_{}_{}", v.context, format_signs(&v.signs))
}

/// Every parity-consistent vector across the eight contexts, in order.
pub fn consistent_vectors() -> Vec<GhzVector> {
    Context::all()
        .into_iter()
        .flat_map(|c| c.vectors())
        .filter(parity_consistent)
        .collect()
}

/// The concrete model as a document: seven points per station plus one
/// terminal meeting point per parity-consistent vector. Every structure
/// event is a singleton on the point of the same name.
pub fn concrete_document() -> ModelDocument {
    let structure = build_abstract_structure();
    let mut points = Vec::new();
    let mut order = Vec::new();
    for st in Station::ALL {
        let init = initial_name(st);
        points.push(init.clone());
        for a in Axis::ALL {
            let stable = stable_name(st, a);
            points.push(stable.clone());
            order.push((init.clone(), stable.clone()));
            for sign in Sign::ALL {
                let out = outcome_name(st, a, sign);
                points.push(out.clone());
                order.push((stable.clone(), out));
            }
        }
    }
    for v in consistent_vectors() {
        let t = terminal_name(&v);
        points.push(t.clone());
        for term in v.term_names() {
            order.push((term, t.clone()));
        }
    }

    let mut doc = ModelDocument::new(points, order);
    for name in structure
        .initials
        .iter()
        .chain(&structure.stables)
        .chain(&structure.outcomes)
    {
        doc.events.insert(name.clone(), vec![name.clone()]);
    }
    doc.spreads = structure.spreads;
    doc.nspreads = structure.nspreads;
    doc
}

/// Concrete realization of the scenario paired with its abstract structure.
#[derive(Debug, Clone)]
pub struct ConcreteGhz {
    pub resolved: ResolvedModel,
    pub structure: GhzStructure,
}

impl ConcreteGhz {
    pub fn model(&self) -> &crate::causal::CausalModel {
        &self.resolved.model
    }
}

pub fn build_concrete_model() -> ConcreteGhz {
    let resolved = concrete_document()
        .resolve()
        .expect("generated document resolves");
    ConcreteGhz {
        resolved,
        structure: build_abstract_structure(),
    }
}
