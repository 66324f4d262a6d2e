use std::fs;
use std::io::Write;
use std::path::Path;
use std::sync::Arc;

use super::{
    io_error, ConvertArgs, RegistryAction, RegistryArgs, ReportArgs, SchemaArgs, SourceFormat,
    TargetFormat, ValidateArgs, XmlAction, XmlArgs,
};
use crate::builtin;
use crate::convert::{
    flat_to_lmf, ingest_pronoun_table, lmf_to_tei, load_code_table, load_entry_mapping,
    parse_flat_lexicon, parse_pronoun_tsv, tei_to_lmf, CodeTable, ConvertError, EntryMapping,
};
use crate::datcat::{load_registry, ConceptualDomain, Registry, Value};
use crate::lmf::{
    load_model, parse_instance, serialize_instance, validate_instance, LmfInstance,
    ModelDescription, ValidationReport, ViolationKind,
};
use crate::report::{Finding, Report, Status};
use crate::tei::{
    apply_customization, base_dictionary_schema, generate_documentation, load_customization,
    validate_entry, TeiSchema,
};
use crate::xml::{
    find_isomorphism, parse_xml, serialize_xml_with, SerializeOptions, XmlTree,
};

pub(super) struct Io<'a> {
    pub out: &'a mut dyn Write,
    pub err: &'a mut dyn Write,
}

/// Exit code on success; a report to print on failure.
type CmdResult = Result<i32, Report>;

fn error(path: impl Into<String>, kind: &str, message: impl Into<String>) -> Report {
    Report::error(Finding::new(path, kind, message))
}

fn violations(findings: Vec<Finding>) -> Report {
    Report::from_findings(findings)
}

fn read(path: &Path) -> Result<String, Report> {
    fs::read_to_string(path).map_err(|e| io_error(path, e))
}

fn load_xml(path: &Path) -> Result<XmlTree, Report> {
    let text = read(path)?;
    parse_xml(&text).map_err(|e| {
        error(
            format!("{}:{}", path.display(), e.position()),
            e.kind(),
            e.to_string(),
        )
    })
}

fn write_output(path: Option<&Path>, text: &str, io: &mut Io) -> Result<(), Report> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| io_error(p, e)),
        None => io
            .out
            .write_all(text.as_bytes())
            .map_err(|e| error("-", "Io", e.to_string())),
    }
}

fn load_registry_arg(path: Option<&Path>) -> Result<Arc<Registry>, Report> {
    match path {
        None => Ok(builtin::registry()),
        Some(p) => {
            let tree = load_xml(p)?;
            load_registry(&tree)
                .map(Arc::new)
                .map_err(|e| error(p.display().to_string(), e.kind(), e.to_string()))
        }
    }
}

fn load_model_arg(
    path: Option<&Path>,
    registry: Arc<Registry>,
    default: &str,
) -> Result<ModelDescription, Report> {
    match path {
        None => Ok(builtin::model(default, registry)),
        Some(p) => {
            let tree = load_xml(p)?;
            load_model(&tree, registry)
                .map_err(|e| error(p.display().to_string(), e.kind(), e.to_string()))
        }
    }
}

fn load_schema(customization: Option<&Path>) -> Result<TeiSchema, Report> {
    let base = base_dictionary_schema();
    let Some(p) = customization else {
        return Ok(base);
    };
    let tree = load_xml(p)?;
    let at = |e: &crate::tei::CustomizationError| match e.directive() {
        Some(d) => format!("{}#directive{d}", p.display()),
        None => p.display().to_string(),
    };
    let cust = load_customization(&tree).map_err(|e| error(at(&e), e.kind(), e.to_string()))?;
    apply_customization(&base, &cust).map_err(|e| error(at(&e), e.kind(), e.to_string()))
}

fn stamp() -> String {
    chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true)
}

fn finish(report: Report, subject: &Path, args: &ReportArgs, io: &mut Io) -> CmdResult {
    if let Some(p) = &args.report {
        let s = args.stamp.then(stamp);
        let xml = report.to_xml(&subject.display().to_string(), s.as_deref());
        fs::write(p, xml).map_err(|e| io_error(p, e))?;
    }
    let _ = io.out.write_all(report.to_tsv().as_bytes());
    let _ = writeln!(io.err, "{}", report.summary());
    Ok(report.exit_code())
}

pub(super) fn validate(a: &ValidateArgs, io: &mut Io) -> CmdResult {
    let (subject, result) = match (&a.lmf, &a.tei) {
        (Some(lmf), _) => (lmf, validate_lmf(a, lmf)),
        (None, Some(tei)) => (tei, validate_tei(a, tei)),
        (None, None) => unreachable!("clap requires one input"),
    };
    let report = result.unwrap_or_else(|r| r);
    finish(report, subject, &a.report, io)
}

fn validate_lmf(a: &ValidateArgs, path: &Path) -> Result<Report, Report> {
    let registry = load_registry_arg(a.registry.as_deref())?;
    let desc = load_model_arg(a.model.as_deref(), registry, builtin::FULL_FORM_MODEL_XML)?;
    let tree = load_xml(path)?;
    let mut inst = match parse_instance(&tree, &desc.vocabulary, &desc.model) {
        Ok(i) => i,
        Err(crate::lmf::LmfError::SchemaViolation { path, message }) => {
            return Ok(violations(vec![Finding::new(path, "SchemaViolation", message)]))
        }
        Err(e) => return Err(error(path.display().to_string(), e.kind(), e.to_string())),
    };
    if let Some(lang) = &a.lang {
        inst.language = Some(lang.clone());
    }
    Ok(Report::from(&validate_instance(&inst, &desc.model)))
}

fn validate_tei(a: &ValidateArgs, path: &Path) -> Result<Report, Report> {
    if a.schema != "base" {
        return Err(error(
            &a.schema,
            "UnknownSchema",
            format!("unknown schema `{}`; the built-in schema is `base`", a.schema),
        ));
    }
    let schema = load_schema(a.customization.as_deref())?;
    let tree = load_xml(path)?;
    Ok(Report::from(&validate_entry(&tree, &schema)))
}

fn convert_error(input: &Path, e: ConvertError) -> Report {
    let file = input.display().to_string();
    match e {
        ConvertError::UnknownCode(codes) => violations(
            codes
                .iter()
                .map(|c| {
                    let path = c.line.map_or(file.clone(), |l| format!("{file}:{l}"));
                    Finding::new(path, "UnknownCode", c.to_string())
                })
                .collect(),
        ),
        ConvertError::UnmappedElement { ref path, .. }
        | ConvertError::UnmappedCategory { location: ref path, .. }
        | ConvertError::UnmappedComponent { location: ref path, .. } => {
            violations(vec![Finding::new(path.clone(), e.kind(), e.to_string())])
        }
        ConvertError::BadGloss { line, .. } => {
            let path = line.map_or(file.clone(), |l| format!("{file}:{l}"));
            violations(vec![Finding::new(path, e.kind(), e.to_string())])
        }
        ConvertError::Line { line: Some(l), .. } | ConvertError::Table { line: l, .. } => {
            error(format!("{file}:{l}"), e.kind(), e.to_string())
        }
        other => error(file, other.kind(), other.to_string()),
    }
}

fn load_codes(path: Option<&Path>) -> Result<CodeTable, Report> {
    match path {
        None => Ok(builtin::french_code_table()),
        Some(p) => {
            load_code_table(&load_xml(p)?).map_err(|e| error(p.display().to_string(), e.kind(), e.to_string()))
        }
    }
}

fn load_mapping(path: Option<&Path>) -> Result<EntryMapping, Report> {
    match path {
        None => Ok(builtin::default_mapping()),
        Some(p) => load_entry_mapping(&load_xml(p)?)
            .map_err(|e| error(p.display().to_string(), e.kind(), e.to_string())),
    }
}

fn render(tree: &XmlTree, xml_decl: bool) -> String {
    serialize_xml_with(
        tree,
        SerializeOptions {
            xml_decl,
            indent: Some(2),
        },
    )
}

/// Literal values on value-set categories are expected from dictionary
/// entries without normalization; they are reported as warnings.
fn split_literal_warnings(inst: &LmfInstance, report: ValidationReport) -> (Vec<Finding>, Report) {
    let (warn, keep): (Vec<_>, Vec<_>) = report.violations.into_iter().partition(|v| {
        v.kind == ViolationKind::ValueOutOfDomain
            && v.feature
                .and_then(|i| v.path.resolve(inst).and_then(|n| n.features.get(i)))
                .is_some_and(|f| matches!(f.value, Value::Literal(_)))
    });
    let warnings = warn
        .iter()
        .map(|v| Finding::new(&v.location, v.kind.as_str(), &v.message))
        .collect();
    (warnings, Report::from(&ValidationReport { violations: keep }))
}

pub(super) fn convert(a: &ConvertArgs, io: &mut Io) -> CmdResult {
    let input = a.input.as_path();
    let output = match (a.from, a.to) {
        (SourceFormat::Flat, TargetFormat::Lmf) => {
            let registry = load_registry_arg(a.registry.as_deref())?;
            let desc = load_model_arg(a.model.as_deref(), registry, builtin::FULL_FORM_MODEL_XML)?;
            let table = load_codes(a.codes.as_deref())?;
            let lines = parse_flat_lexicon(&read(input)?).map_err(|e| convert_error(input, e))?;
            let lex = flat_to_lmf(&lines, &table, &desc.model).map_err(|e| convert_error(input, e))?;
            lmf_output(&lex, &desc, a, io)?
        }
        (SourceFormat::Pronouns, TargetFormat::Lmf) => {
            let registry = load_registry_arg(a.registry.as_deref())?;
            let desc = load_model_arg(a.model.as_deref(), registry, builtin::FULL_FORM_MODEL_XML)?;
            let rows = parse_pronoun_tsv(&read(input)?).map_err(|e| convert_error(input, e))?;
            let lex = ingest_pronoun_table(&rows, a.lang.as_deref(), &desc.model)
                .map_err(|e| convert_error(input, e))?;
            lmf_output(&lex, &desc, a, io)?
        }
        (SourceFormat::Tei, TargetFormat::Lmf) => {
            let registry = load_registry_arg(a.registry.as_deref())?;
            let desc = load_model_arg(a.model.as_deref(), registry, builtin::DICTIONARY_MODEL_XML)?;
            let mapping = load_mapping(a.mapping.as_deref())?;
            let tree = load_xml(input)?;
            let src = Report::from(&validate_entry(&tree, &base_dictionary_schema()));
            if src.status() != Status::Ok {
                return Err(src);
            }
            let entry = tei_to_lmf(&tree, &mapping, &desc.model).map_err(|e| convert_error(input, e))?;
            lmf_output(&entry, &desc, a, io)?
        }
        (SourceFormat::Lmf, TargetFormat::Tei) => {
            let registry = load_registry_arg(a.registry.as_deref())?;
            let desc = load_model_arg(a.model.as_deref(), registry, builtin::DICTIONARY_MODEL_XML)?;
            let mapping = load_mapping(a.mapping.as_deref())?;
            let tree = load_xml(input)?;
            let inst = parse_instance(&tree, &desc.vocabulary, &desc.model).map_err(|e| {
                let status_path = match &e {
                    crate::lmf::LmfError::SchemaViolation { path, .. } => path.clone(),
                    _ => input.display().to_string(),
                };
                error(status_path, e.kind(), e.to_string())
            })?;
            let entry = lmf_to_tei(&inst, &mapping).map_err(|e| convert_error(input, e))?;
            let check = Report::from(&validate_entry(&entry, &base_dictionary_schema()));
            if check.status() != Status::Ok {
                return Err(check);
            }
            render(&entry, a.xml_decl)
        }
        (from, to) => {
            return Err(error(
                input.display().to_string(),
                "UnsupportedConversion",
                format!("no conversion from {from:?} to {to:?}").to_lowercase(),
            ))
        }
    };
    write_output(a.output.as_deref(), &output, io)?;
    Ok(0)
}

/// Validates a produced instance and renders it; violations abort.
fn lmf_output(inst: &LmfInstance, desc: &ModelDescription, a: &ConvertArgs, io: &mut Io) -> Result<String, Report> {
    let (warnings, report) = split_literal_warnings(inst, validate_instance(inst, &desc.model));
    for w in warnings {
        let _ = writeln!(io.err, "warning\t{}", w.to_tsv());
    }
    if report.status() != Status::Ok {
        return Err(report);
    }
    let tree = serialize_instance(inst, &desc.vocabulary)
        .map_err(|e| error(a.input.display().to_string(), e.kind(), e.to_string()))?;
    Ok(render(&tree, a.xml_decl))
}

pub(super) fn registry(a: &RegistryArgs, io: &mut Io) -> CmdResult {
    let reg = load_registry_arg(a.registry.as_deref())?;
    let unknown = |id: &str| {
        violations(vec![Finding::new(
            id,
            "UnknownCategory",
            format!("no category `{id}` in the registry"),
        )])
    };
    let mut lines: Vec<String> = Vec::new();
    match &a.action {
        RegistryAction::Get { id } => {
            let c = reg.get(id).ok_or_else(|| unknown(id))?;
            lines.push(format!("id\t{}", c.id));
            lines.push(format!("kind\t{}", c.kind.as_str()));
            lines.extend(c.profiles.iter().map(|p| format!("profile\t{p}")));
            lines.extend(c.definitions.iter().map(|(l, d)| format!("definition\t{l}\t{d}")));
            match &c.conceptual_domain {
                Some(ConceptualDomain::Values(vs)) => {
                    lines.extend(vs.iter().map(|v| format!("domain\t{v}")))
                }
                Some(ConceptualDomain::Datatype { datatype, codes }) => {
                    lines.push(format!("datatype\t{datatype}"));
                    lines.extend(codes.iter().map(|c| format!("code\t{}\t{}", c.value, c.label)));
                }
                None => {}
            }
            for s in &c.language_sections {
                lines.extend(s.names.iter().map(|n| format!("name\t{}\t{n}", s.language)));
                if let Some(r) = &s.definition_refinement {
                    lines.push(format!("refinement\t{}\t{r}", s.language));
                }
                if let Some(r) = &s.restricted_domain {
                    lines.extend(r.iter().map(|v| format!("restricted\t{}\t{v}", s.language)));
                }
            }
        }
        RegistryAction::Domain { id, lang } => {
            if !reg.contains(id) {
                return Err(unknown(id));
            }
            let values = reg.resolve_domain(id, lang.as_deref()).map_err(|e| {
                violations(vec![Finding::new(id.as_str(), e.kind(), e.to_string())])
            })?;
            lines.extend(values.iter().cloned());
        }
        RegistryAction::Find { name, lang } => {
            let ids = reg.lookup_by_name(name, lang);
            if ids.is_empty() {
                return Err(violations(vec![Finding::new(
                    name.as_str(),
                    "UnknownCategory",
                    format!("no category named `{name}` in language {lang}"),
                )]));
            }
            lines.extend(ids.into_iter().map(str::to_string));
        }
    }
    let text: String = lines.into_iter().map(|l| l + "\n").collect();
    write_output(None, &text, io)?;
    Ok(0)
}

fn schema_summary(schema: &TeiSchema) -> String {
    let mut out = String::new();
    for e in schema.elements() {
        out.push_str(&format!("element\t{}\t{}\n", e.name, e.content));
        if let Some(vs) = &e.value_constraint {
            out.push_str(&format!("values\t{}\t{}\n", e.name, vs.join(" ")));
        }
    }
    for c in schema.classes() {
        out.push_str(&format!("class\t{}\t{}\n", c.name, c.members.join(" ")));
    }
    out
}

pub(super) fn schema(a: &SchemaArgs, io: &mut Io) -> CmdResult {
    let schema = load_schema(a.customization.as_deref())?;
    if let Some(entry) = &a.validate {
        let report = match load_xml(entry) {
            Ok(tree) => Report::from(&validate_entry(&tree, &schema)),
            Err(r) => r,
        };
        return finish(report, entry, &a.report, io);
    }
    let text = if a.doc {
        generate_documentation(&schema)
    } else {
        schema_summary(&schema)
    };
    write_output(a.output.as_deref(), &text, io)?;
    Ok(0)
}

pub(super) fn xml(a: &XmlArgs, io: &mut Io) -> CmdResult {
    match &a.action {
        XmlAction::Check { file } => {
            let tree = load_xml(file)?;
            let _ = writeln!(io.err, "ok: {} elements", tree.element_count());
            Ok(0)
        }
        XmlAction::Format {
            file,
            compact,
            xml_decl,
        } => {
            let tree = load_xml(file)?;
            let opts = SerializeOptions {
                xml_decl: *xml_decl,
                indent: (!compact).then_some(2),
            };
            let mut text = serialize_xml_with(&tree, opts);
            if !text.ends_with('\n') {
                text.push('\n');
            }
            write_output(None, &text, io)?;
            Ok(0)
        }
        XmlAction::Iso { a: pa, b: pb } => {
            let (ta, tb) = (load_xml(pa)?, load_xml(pb)?);
            match find_isomorphism(&ta, &tb) {
                Ok(Some(r)) => {
                    let text: String = r.iter().map(|(f, t)| format!("{f}\t{t}\n")).collect();
                    write_output(None, &text, io)?;
                    Ok(0)
                }
                Ok(None) => Err(violations(vec![Finding::new(
                    format!("{} {}", pa.display(), pb.display()),
                    "NotIsomorphic",
                    "no consistent element renaming maps one tree onto the other",
                )])),
                Err(e) => Err(error(pa.display().to_string(), "SearchBudgetExceeded", e.to_string())),
            }
        }
    }
}
