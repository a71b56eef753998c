use serde::{Deserialize, Serialize};

/// A single event mark: numeric or categorical.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Mark {
    Numeric(f64),
    Category(String),
}

impl Mark {
    /// Parse a raw field. Empty fields carry no mark; anything that is not a
    /// finite number is a category label.
    pub fn parse(raw: &str) -> Option<Mark> {
        let raw = raw.trim();
        if raw.is_empty() {
            return None;
        }
        match raw.parse::<f64>() {
            Ok(v) if v.is_finite() => Some(Mark::Numeric(v)),
            _ => Some(Mark::Category(raw.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Event {
    pub x: f64,
    pub y: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mark: Option<Mark>,
}

impl Event {
    pub fn new(x: f64, y: f64) -> Self {
        Self { x, y, mark: None }
    }

    pub fn marked(x: f64, y: f64, mark: Mark) -> Self {
        Self { x, y, mark: Some(mark) }
    }
}

/// Ordered event records with dataset-wide mark metadata.
///
/// `levels` holds every category level known to the dataset, sorted. It
/// always contains the observed levels and may contain declared levels that
/// no event carries (they summarize to zero).
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct EventTable {
    events: Vec<Event>,
    #[serde(default)]
    mark_name: Option<String>,
    #[serde(default)]
    levels: Vec<String>,
}

impl EventTable {
    pub fn new(events: Vec<Event>) -> Self {
        let mut table = Self { events, mark_name: None, levels: Vec::new() };
        table.levels = table.observed_levels();
        table
    }

    pub fn from_coords(coords: &[[f64; 2]]) -> Self {
        Self::new(coords.iter().map(|c| Event::new(c[0], c[1])).collect())
    }

    /// Name of the mark column (the events file header), if any.
    pub fn with_mark_name(mut self, name: impl Into<String>) -> Self {
        self.mark_name = Some(name.into());
        self
    }

    /// Declare additional category levels.
    pub fn with_levels<I, S>(mut self, levels: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.levels.extend(levels.into_iter().map(Into::into));
        self.levels.sort();
        self.levels.dedup();
        self
    }

    fn observed_levels(&self) -> Vec<String> {
        let mut levels: Vec<String> = self
            .events
            .iter()
            .filter_map(|e| match &e.mark {
                Some(Mark::Category(c)) => Some(c.clone()),
                _ => None,
            })
            .collect();
        levels.sort();
        levels.dedup();
        levels
    }

    pub fn events(&self) -> &[Event] {
        &self.events
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    pub fn mark_name(&self) -> Option<&str> {
        self.mark_name.as_deref()
    }

    pub fn levels(&self) -> &[String] {
        &self.levels
    }

    pub fn has_numeric_marks(&self) -> bool {
        self.events.iter().any(|e| matches!(e.mark, Some(Mark::Numeric(_))))
    }

    pub fn has_marks(&self) -> bool {
        self.events.iter().any(|e| e.mark.is_some()) || !self.levels.is_empty()
    }

    /// Events satisfying `keep`, with mark metadata retained.
    pub fn filter(&self, mut keep: impl FnMut(&Event) -> bool) -> EventTable {
        EventTable {
            events: self.events.iter().filter(|e| keep(e)).cloned().collect(),
            mark_name: self.mark_name.clone(),
            levels: self.levels.clone(),
        }
    }

    /// Events whose categorical mark equals `level`. Keeps the full level set.
    pub fn with_category(&self, level: &str) -> EventTable {
        self.filter(|e| matches!(&e.mark, Some(Mark::Category(c)) if c == level))
    }
}
