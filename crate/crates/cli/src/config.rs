//! Flat `key = value` config files, merged under the command-line flags.

use std::ffi::OsString;

/// Parses `key = value` lines. Blank lines and `#` comments are skipped.
pub fn parse(text: &str) -> Result<Vec<(String, String)>, String> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| format!("config line {}: expected key = value", i + 1))?;
        let k = k.trim().replace('_', "-");
        if k.is_empty() || k == "config" {
            return Err(format!("config line {}: invalid key", i + 1));
        }
        out.push((k, v.trim().to_string()));
    }
    Ok(out)
}

/// Position of the config path in `args`, accepting `--config P` and `--config=P`.
fn find_config(args: &[OsString]) -> Option<(usize, usize, String)> {
    for (i, a) in args.iter().enumerate() {
        let a = a.to_string_lossy();
        if a == "--" {
            return None;
        }
        if a == "--config" {
            return args.get(i + 1).map(|p| (i, 2, p.to_string_lossy().into_owned()));
        }
        if let Some(p) = a.strip_prefix("--config=") {
            return Some((i, 1, p.to_string()));
        }
    }
    None
}

/// Removes `--config PATH` and inserts the file's entries as flags right
/// after the subcommand name, ahead of every explicit flag so those win.
pub fn merge(args: Vec<OsString>, is_subcommand: impl Fn(&str) -> bool) -> Result<Vec<OsString>, String> {
    let Some((at, width, path)) = find_config(&args) else {
        return Ok(args);
    };
    let text = std::fs::read_to_string(&path).map_err(|e| format!("cannot read config `{path}`: {e}"))?;
    let entries = parse(&text)?;
    let mut args = args;
    args.drain(at..at + width);
    let sub = args
        .iter()
        .skip(1)
        .position(|a| is_subcommand(&a.to_string_lossy()))
        .map(|p| p + 1);
    let mut inserted = Vec::new();
    for (k, v) in entries {
        match v.as_str() {
            "true" => inserted.push(OsString::from(format!("--{k}"))),
            "false" => {}
            _ => inserted.push(OsString::from(format!("--{k}={v}"))),
        }
    }
    let pos = sub.map_or(1, |p| p + 1);
    args.splice(pos..pos, inserted);
    Ok(args)
}
