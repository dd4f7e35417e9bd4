//! NMEA 0183 sentence parsing: framing, checksums, typed GGA/GSA/GSV records,
//! and multi-part GSV assembly.
//!
//! Input is ASCII text, one sentence per line, framed as `$<payload>*hh`
//! where `hh` is the XOR of every payload byte, in uppercase hex. CR/LF and
//! bare LF line endings are both accepted. Sentence tags other than GGA, GSA
//! and GSV pass through as [`Sentence::Unhandled`] with their original text
//! preserved, so logs can be re-emitted losslessly.
//!
//! Parsing is tolerant where receivers are sloppy: an out-of-range field
//! (elevation above 90, negative C/N0) is recorded as absent and surfaced as
//! a [`Diagnostic`] instead of failing the sentence. Frame-level problems
//! (bad checksum, missing `$`, too few fields) are hard [`ParseError`]s.

use std::fmt;

use thiserror::Error;

/// Constellation identified by the two-character talker prefix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Talker {
    Gps,
    Glonass,
    Galileo,
    Beidou,
    /// Combined multi-constellation solution (`GN`).
    Gnss,
    Other([u8; 2]),
}

impl Talker {
    fn from_prefix(prefix: &str) -> Talker {
        match prefix.as_bytes() {
            b"GP" => Talker::Gps,
            b"GL" => Talker::Glonass,
            b"GA" => Talker::Galileo,
            b"GB" | b"BD" => Talker::Beidou,
            b"GN" => Talker::Gnss,
            other => {
                let mut id = [b'?'; 2];
                for (slot, byte) in id.iter_mut().zip(other.iter()) {
                    *slot = *byte;
                }
                Talker::Other(id)
            }
        }
    }
}

/// How strictly checksums are enforced.
///
/// Strict requires every sentence to carry a valid checksum. Lenient accepts
/// sentences without one (some loggers strip them) but a checksum that is
/// present and wrong fails in both modes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ChecksumPolicy {
    #[default]
    Strict,
    Lenient,
}

/// Which talkers are parsed into typed records.
///
/// The default accepts GPS (`GP`) talkers only; anything else passes through
/// as [`Sentence::Unhandled`]. `AnyConstellation` parses every talker and
/// tags the record with its [`Talker`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TalkerFilter {
    #[default]
    GpsOnly,
    AnyConstellation,
}

/// Frame and filter settings for one parsing pass.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ParsePolicy {
    pub checksum: ChecksumPolicy,
    pub talkers: TalkerFilter,
}

impl ParsePolicy {
    pub fn strict() -> Self {
        ParsePolicy::default()
    }

    pub fn lenient() -> Self {
        ParsePolicy {
            checksum: ChecksumPolicy::Lenient,
            ..ParsePolicy::default()
        }
    }

    pub fn with_any_constellation(mut self) -> Self {
        self.talkers = TalkerFilter::AnyConstellation;
        self
    }
}

/// A framed sentence split into fields but not interpreted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawSentence {
    /// Two-character talker prefix, e.g. `GP`.
    pub talker: String,
    /// Three-character sentence tag, e.g. `GGA`.
    pub type_tag: String,
    /// Data fields after the address, empty strings preserved.
    pub fields: Vec<String>,
    /// Checksum text as it appeared on the wire, if any.
    pub checksum: Option<String>,
    /// 1-based position in the source stream (0 when parsed standalone).
    pub line_number: u64,
    /// Verbatim sentence text without the line terminator.
    pub text: String,
}

impl RawSentence {
    pub fn constellation(&self) -> Talker {
        Talker::from_prefix(&self.talker)
    }
}

/// Time of day from a GGA time field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UtcTime {
    pub hours: u8,
    pub minutes: u8,
    pub seconds: f64,
}

impl fmt::Display for UtcTime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:02}:{:02}:{:05.2}",
            self.hours, self.minutes, self.seconds
        )
    }
}

/// Fix data carried by a GGA sentence.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct FixData {
    pub utc_time: Option<UtcTime>,
    /// Receiver fix quality code; 0 means no fix.
    pub fix_quality: u8,
    pub satellites_used: u32,
    pub latitude_deg: Option<f64>,
    pub longitude_deg: Option<f64>,
    pub altitude_m: Option<f64>,
}

impl FixData {
    pub fn has_fix(&self) -> bool {
        self.fix_quality > 0
    }
}

/// Dilution-of-precision triple from a GSA sentence.
///
/// Receivers report `99.99` as the no-fix sentinel; it round-trips exactly
/// through parsing and 2-decimal serialization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DopValues {
    pub pdop: f64,
    pub hdop: f64,
    pub vdop: f64,
}

/// One satellite's entry within a GSV sentence.
///
/// An absent `cn0_dbhz` means the satellite is in view but delivered no
/// signal reading; such entries never contribute to sums or counts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SatelliteObservation {
    pub prn: u32,
    pub elevation_deg: Option<f64>,
    pub azimuth_deg: Option<f64>,
    pub cn0_dbhz: Option<f64>,
}

/// One GSV sentence: a numbered part of a satellites-in-view group.
#[derive(Debug, Clone, PartialEq)]
pub struct GsvPart {
    pub total_parts: u32,
    pub part_number: u32,
    pub satellites_in_view: u32,
    pub satellites: Vec<SatelliteObservation>,
}

/// A parsed sentence.
#[derive(Debug, Clone, PartialEq)]
pub enum Sentence {
    Gga { talker: Talker, fix: FixData },
    Gsa { talker: Talker, dop: DopValues },
    Gsv { talker: Talker, part: GsvPart },
    /// Tag we do not interpret (or a talker excluded by the filter).
    Unhandled(RawSentence),
}

/// Parse output: the sentence plus any non-fatal field issues.
#[derive(Debug, Clone, PartialEq)]
pub struct Parsed {
    pub sentence: Sentence,
    pub diagnostics: Vec<Diagnostic>,
}

/// Non-fatal anomaly noticed while parsing or folding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    /// 1-based source line, when known.
    pub line_number: Option<u64>,
    pub kind: DiagnosticKind,
    pub detail: String,
}

impl Diagnostic {
    pub(crate) fn new(line_number: Option<u64>, kind: DiagnosticKind, detail: String) -> Self {
        Diagnostic {
            line_number,
            kind,
            detail,
        }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line_number {
            Some(n) => write!(f, "line {}: {:?}: {}", n, self.kind, self.detail),
            None => write!(f, "{:?}: {}", self.kind, self.detail),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiagnosticKind {
    /// Numeric field outside its documented range; recorded as absent.
    FieldRange,
    /// Unparseable numeric field; recorded as absent.
    BadNumber,
    /// HDOP above PDOP within one GSA sentence.
    DopOrder,
    /// GSV group is missing one or more parts.
    IncompleteGsvGroup,
    /// GSV parts disagree on totals, repeat a part number, or overrun the
    /// declared satellite count.
    InconsistentGsvTotals,
    /// A second GGA/GSA landed in the same epoch; the later one won.
    DuplicateSentence,
    /// A whole sentence was rejected while streaming.
    ParseFailure,
}

/// Frame-level failure; the sentence yields no record.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("malformed frame: {0}")]
    MalformedFrame(String),
    #[error("checksum mismatch: sentence declares {declared}, computed {computed}")]
    ChecksumMismatch { declared: String, computed: String },
}

/// XOR-fold checksum over a sentence payload, as uppercase hex.
///
/// The payload is everything strictly between `$` and `*`. Empty input
/// yields `"00"`.
pub fn compute_checksum(payload: &str) -> String {
    let fold = payload.bytes().fold(0u8, |acc, byte| acc ^ byte);
    format!("{fold:02X}")
}

/// Wrap a payload in `$...*hh` framing with its computed checksum.
pub fn frame(payload: &str) -> String {
    format!("${}*{}", payload, compute_checksum(payload))
}

/// Parse one sentence under `policy`.
///
/// `line_number` is carried into diagnostics and [`RawSentence`]; pass 0
/// when parsing standalone text. The line may end with LF or CRLF.
pub fn parse_sentence(
    line: &str,
    policy: ParsePolicy,
    line_number: u64,
) -> Result<Parsed, ParseError> {
    if !line.is_ascii() {
        return Err(ParseError::MalformedFrame(
            "non-ASCII byte in sentence".into(),
        ));
    }
    let text = line.trim_end_matches(['\r', '\n']);
    let body = text
        .strip_prefix('$')
        .ok_or_else(|| ParseError::MalformedFrame("sentence does not start with '$'".into()))?;

    let (payload, checksum) = match body.rsplit_once('*') {
        Some((payload, declared)) => {
            if declared.len() != 2 || !declared.bytes().all(|b| b.is_ascii_hexdigit()) {
                return Err(ParseError::MalformedFrame(format!(
                    "checksum field '{declared}' is not two hex digits"
                )));
            }
            let computed = compute_checksum(payload);
            if !declared.eq_ignore_ascii_case(&computed) {
                return Err(ParseError::ChecksumMismatch {
                    declared: declared.to_uppercase(),
                    computed,
                });
            }
            (payload, Some(declared.to_string()))
        }
        None => {
            if policy.checksum == ChecksumPolicy::Strict {
                return Err(ParseError::MalformedFrame(
                    "missing checksum under strict policy".into(),
                ));
            }
            (body, None)
        }
    };

    let mut fields = payload.split(',');
    let address = fields.next().unwrap_or("");
    if address.len() < 3 {
        return Err(ParseError::MalformedFrame(format!(
            "address field '{address}' too short"
        )));
    }
    let fields: Vec<&str> = fields.collect();
    let (talker_text, tag) = if address.len() == 5 {
        address.split_at(2)
    } else {
        // Proprietary or nonstandard address; keep it whole as the tag.
        ("", address)
    };
    let talker = Talker::from_prefix(talker_text);

    let raw = || {
        Sentence::Unhandled(RawSentence {
            talker: talker_text.to_string(),
            type_tag: tag.to_string(),
            fields: fields.iter().map(|f| f.to_string()).collect(),
            checksum: checksum.clone(),
            line_number,
            text: text.to_string(),
        })
    };

    let handled = matches!(tag, "GGA" | "GSA" | "GSV");
    let talker_ok = match policy.talkers {
        TalkerFilter::GpsOnly => talker == Talker::Gps,
        TalkerFilter::AnyConstellation => true,
    };
    if !handled || !talker_ok {
        return Ok(Parsed {
            sentence: raw(),
            diagnostics: Vec::new(),
        });
    }

    let mut ctx = FieldContext {
        line_number,
        diagnostics: Vec::new(),
    };
    let sentence = match tag {
        "GGA" => Sentence::Gga {
            talker,
            fix: parse_gga(&fields, &mut ctx)?,
        },
        "GSA" => Sentence::Gsa {
            talker,
            dop: parse_gsa(&fields, &mut ctx)?,
        },
        "GSV" => Sentence::Gsv {
            talker,
            part: parse_gsv(&fields, &mut ctx)?,
        },
        _ => unreachable!(),
    };
    Ok(Parsed {
        sentence,
        diagnostics: ctx.diagnostics,
    })
}

struct FieldContext {
    line_number: u64,
    diagnostics: Vec<Diagnostic>,
}

impl FieldContext {
    fn push(&mut self, kind: DiagnosticKind, detail: String) {
        self.diagnostics
            .push(Diagnostic::new(Some(self.line_number), kind, detail));
    }

    /// Parse an optional numeric field; unparseable text degrades to absent.
    fn number(&mut self, field: &str, name: &str) -> Option<f64> {
        if field.is_empty() {
            return None;
        }
        match field.parse::<f64>() {
            Ok(v) if v.is_finite() => Some(v),
            _ => {
                self.push(
                    DiagnosticKind::BadNumber,
                    format!("{name} field '{field}' is not a number"),
                );
                None
            }
        }
    }

    /// Like `number`, but values outside `[lo, hi]` degrade to absent.
    fn number_in(&mut self, field: &str, name: &str, lo: f64, hi: f64) -> Option<f64> {
        let v = self.number(field, name)?;
        if v < lo || v > hi {
            self.push(
                DiagnosticKind::FieldRange,
                format!("{name} {v} outside [{lo}, {hi}]"),
            );
            return None;
        }
        Some(v)
    }

    fn integer(&mut self, field: &str, name: &str) -> Option<u32> {
        if field.is_empty() {
            return None;
        }
        match field.parse::<u32>() {
            Ok(v) => Some(v),
            Err(_) => {
                self.push(
                    DiagnosticKind::BadNumber,
                    format!("{name} field '{field}' is not an integer"),
                );
                None
            }
        }
    }
}

fn too_few(tag: &str, have: usize, want: usize) -> ParseError {
    ParseError::MalformedFrame(format!("{tag} has {have} fields, needs at least {want}"))
}

fn parse_utc_time(field: &str, ctx: &mut FieldContext) -> Option<UtcTime> {
    if field.is_empty() {
        return None;
    }
    let ok = field.len() >= 6 && field.as_bytes()[..6].iter().all(|b| b.is_ascii_digit());
    let parsed = if ok {
        let hours: u8 = field[0..2].parse().ok()?;
        let minutes: u8 = field[2..4].parse().ok()?;
        let seconds: f64 = field[4..].parse().ok()?;
        (hours < 24 && minutes < 60 && (0.0..60.0).contains(&seconds)).then_some(UtcTime {
            hours,
            minutes,
            seconds,
        })
    } else {
        None
    };
    if parsed.is_none() {
        ctx.push(
            DiagnosticKind::BadNumber,
            format!("time field '{field}' is not hhmmss[.sss]"),
        );
    }
    parsed
}

/// `ddmm.mmmm` (or `dddmm.mmmm`) plus hemisphere letter to signed degrees.
fn parse_angle(
    value: &str,
    hemi: &str,
    negative_hemi: char,
    name: &str,
    ctx: &mut FieldContext,
) -> Option<f64> {
    let raw = ctx.number(value, name)?;
    let degrees = (raw / 100.0).trunc();
    let minutes = raw - degrees * 100.0;
    if minutes >= 60.0 {
        ctx.push(
            DiagnosticKind::FieldRange,
            format!("{name} minutes {minutes:.4} out of range"),
        );
        return None;
    }
    let signed = degrees + minutes / 60.0;
    match hemi {
        h if h.len() == 1 && h.chars().next() == Some(negative_hemi) => Some(-signed),
        "N" | "E" => Some(signed),
        "" => None,
        other => {
            ctx.push(
                DiagnosticKind::BadNumber,
                format!("{name} hemisphere '{other}' unrecognized"),
            );
            None
        }
    }
}

fn parse_gga(fields: &[&str], ctx: &mut FieldContext) -> Result<FixData, ParseError> {
    // time, lat, N/S, lon, E/W, quality, satellites used
    if fields.len() < 7 {
        return Err(too_few("GGA", fields.len(), 7));
    }
    let utc_time = parse_utc_time(fields[0], ctx);
    let latitude_deg = parse_angle(fields[1], fields[2], 'S', "latitude", ctx);
    let longitude_deg = parse_angle(fields[3], fields[4], 'W', "longitude", ctx);
    let fix_quality = ctx.integer(fields[5], "fix quality").unwrap_or(0).min(u8::MAX as u32) as u8;
    let satellites_used = ctx.integer(fields[6], "satellites used").unwrap_or(0);
    let altitude_m = fields.get(8).and_then(|f| ctx.number(f, "altitude"));
    Ok(FixData {
        utc_time,
        fix_quality,
        satellites_used,
        latitude_deg,
        longitude_deg,
        altitude_m,
    })
}

fn parse_gsa(fields: &[&str], ctx: &mut FieldContext) -> Result<DopValues, ParseError> {
    // mode, fix type, 12 PRN slots, PDOP, HDOP, VDOP
    if fields.len() < 17 {
        return Err(too_few("GSA", fields.len(), 17));
    }
    // Absent DOP means no geometry solution: the sentinel stands in so the
    // value is always comparable downstream.
    let sentinel = crate::epoch::DOP_SENTINEL;
    let pdop = ctx.number_in(fields[14], "PDOP", 0.0, 100.0).unwrap_or(sentinel);
    let hdop = ctx.number_in(fields[15], "HDOP", 0.0, 100.0).unwrap_or(sentinel);
    let vdop = ctx.number_in(fields[16], "VDOP", 0.0, 100.0).unwrap_or(sentinel);
    if hdop > pdop {
        ctx.push(
            DiagnosticKind::DopOrder,
            format!("HDOP {hdop} exceeds PDOP {pdop}"),
        );
    }
    Ok(DopValues { pdop, hdop, vdop })
}

fn parse_gsv(fields: &[&str], ctx: &mut FieldContext) -> Result<GsvPart, ParseError> {
    // total parts, part number, satellites in view, then 4-field entries
    if fields.len() < 3 {
        return Err(too_few("GSV", fields.len(), 3));
    }
    let total_parts = ctx.integer(fields[0], "GSV total parts").unwrap_or(1).max(1);
    let part_number = ctx.integer(fields[1], "GSV part number").unwrap_or(1).max(1);
    let satellites_in_view = ctx.integer(fields[2], "satellites in view").unwrap_or(0);

    let entries = &fields[3..];
    let mut satellites = Vec::with_capacity(entries.len() / 4);
    for entry in entries.chunks(4) {
        if entry.len() < 4 {
            // NMEA 4.x appends a lone signal-ID field; anything else short is
            // a truncated entry.
            if entry.len() > 1 {
                ctx.push(
                    DiagnosticKind::BadNumber,
                    format!("truncated GSV satellite entry of {} fields", entry.len()),
                );
            }
            break;
        }
        let Some(prn) = ctx.integer(entry[0], "PRN") else {
            continue;
        };
        satellites.push(SatelliteObservation {
            prn,
            elevation_deg: ctx.number_in(entry[1], "elevation", 0.0, 90.0),
            azimuth_deg: ctx.number_in(entry[2], "azimuth", 0.0, 359.0),
            cn0_dbhz: ctx.number_in(entry[3], "C/N0", 0.0, f64::INFINITY),
        });
    }
    Ok(GsvPart {
        total_parts,
        part_number,
        satellites_in_view,
        satellites,
    })
}

/// Concatenate the parts of one GSV group into a satellite list.
///
/// Parts are joined in part-number order. Gaps, repeated part numbers,
/// disagreeing totals, and overruns of the declared satellite count are
/// reported as issues alongside the (possibly partial) list; the list is
/// truncated to the declared count so it never overruns it.
pub fn assemble_gsv(parts: &[GsvPart]) -> (Vec<SatelliteObservation>, Vec<GsvIssue>) {
    let Some(first) = parts.first() else {
        return (Vec::new(), Vec::new());
    };
    let mut issues = Vec::new();
    let total = first.total_parts;
    let declared = first.satellites_in_view;
    if parts
        .iter()
        .any(|p| p.total_parts != total || p.satellites_in_view != declared)
    {
        issues.push(GsvIssue::InconsistentTotals);
    }

    let mut by_number: Vec<Option<&GsvPart>> = vec![None; total as usize];
    for part in parts {
        let n = part.part_number;
        if n == 0 || n > total {
            issues.push(GsvIssue::PartOutOfRange { part_number: n });
            continue;
        }
        let slot = &mut by_number[(n - 1) as usize];
        if slot.is_some() {
            issues.push(GsvIssue::DuplicatePart { part_number: n });
        }
        *slot = Some(part);
    }

    let missing: Vec<u32> = by_number
        .iter()
        .enumerate()
        .filter(|(_, slot)| slot.is_none())
        .map(|(i, _)| i as u32 + 1)
        .collect();
    if !missing.is_empty() {
        issues.push(GsvIssue::IncompleteGroup {
            expected_parts: total,
            missing: missing.clone(),
        });
    }

    let mut satellites: Vec<SatelliteObservation> = by_number
        .iter()
        .flatten()
        .flat_map(|p| p.satellites.iter().copied())
        .collect();
    if satellites.len() > declared as usize {
        issues.push(GsvIssue::CountOverrun {
            declared,
            actual: satellites.len(),
        });
        satellites.truncate(declared as usize);
    }
    (satellites, issues)
}

/// Problem with a multi-part GSV group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GsvIssue {
    IncompleteGroup { expected_parts: u32, missing: Vec<u32> },
    InconsistentTotals,
    DuplicatePart { part_number: u32 },
    PartOutOfRange { part_number: u32 },
    CountOverrun { declared: u32, actual: usize },
}

impl GsvIssue {
    pub(crate) fn to_diagnostic(&self, line_number: Option<u64>) -> Diagnostic {
        let kind = match self {
            GsvIssue::IncompleteGroup { .. } => DiagnosticKind::IncompleteGsvGroup,
            _ => DiagnosticKind::InconsistentGsvTotals,
        };
        Diagnostic::new(line_number, kind, format!("{self:?}"))
    }
}
