//! `qpsc spectrum`: sorted levels with degeneracy-group annotations.

use std::collections::HashMap;
use std::process::ExitCode;

use qpsc::report::{fmt_json, fmt_text};
use qpsc::states::{degeneracy_groups, spectrum, DegeneracyGroup, EnergyLevel, QuantumNumbers};

use crate::{geometry_from, write_output, Failure, Format, SpectrumArgs, EXIT_FLAG_ERROR};

pub fn run(args: SpectrumArgs) -> Result<ExitCode, Failure> {
    let geom = geometry_from(
        args.radius,
        args.degenerate,
        args.length,
        args.mass,
        args.hbar,
        false,
    )?;
    if !(args.group_tol.is_finite() && args.group_tol > 0.0) {
        return Err(Failure::new(
            EXIT_FLAG_ERROR,
            "--group-tol must be positive",
        ));
    }
    let (max_nz, max_ntheta) = (args.max[0], args.max[1]);
    if max_nz < 1 || max_ntheta < 1 {
        return Err(Failure::new(EXIT_FLAG_ERROR, "--max bounds must be >= 1"));
    }

    let levels = spectrum(&geom, max_nz, max_ntheta);
    let groups = degeneracy_groups(&levels, args.group_tol);
    let group_of: HashMap<QuantumNumbers, usize> = groups
        .iter()
        .enumerate()
        .flat_map(|(i, g)| g.members().iter().map(move |&qn| (qn, i)))
        .collect();

    let content = match args.out.format {
        Format::Text => render_text(&levels, &groups, &group_of),
        Format::Json => render_json(&geom, &levels, &groups, &group_of),
        Format::Csv => render_csv(&levels, &groups, &group_of),
    };
    write_output(&args.out, &content)?;
    Ok(ExitCode::SUCCESS)
}

fn render_text(
    levels: &[EnergyLevel],
    groups: &[DegeneracyGroup],
    group_of: &HashMap<QuantumNumbers, usize>,
) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "{:<8} {:<8} {:>14} {:>7} {:>13}\n",
        "n_z", "n_theta", "energy", "group", "multiplicity"
    ));
    for level in levels {
        let g = group_of[&level.qn];
        out.push_str(&format!(
            "{:<8} {:<8} {:>14} {:>7} {:>13}\n",
            level.qn.n_z(),
            level.qn.n_theta(),
            fmt_text(level.energy),
            g,
            groups[g].multiplicity()
        ));
    }
    out.push_str(&format!(
        "\n{} levels in {} degeneracy groups\n",
        levels.len(),
        groups.len()
    ));
    out
}

fn render_json(
    geom: &qpsc::CylinderGeometry,
    levels: &[EnergyLevel],
    groups: &[DegeneracyGroup],
    group_of: &HashMap<QuantumNumbers, usize>,
) -> String {
    let mut out = String::from("{\n");
    out.push_str(&format!(
        "  \"geometry\":{{\"radius\":{},\"length\":{},\"mass\":{},\"hbar\":{}}},\n",
        fmt_json(geom.radius()),
        fmt_json(geom.length()),
        fmt_json(geom.mass()),
        fmt_json(geom.hbar())
    ));
    out.push_str("  \"levels\":[\n");
    for (i, level) in levels.iter().enumerate() {
        out.push_str(&format!(
            "    {{\"n_z\":{},\"n_theta\":{},\"energy\":{},\"group\":{}}}{}\n",
            level.qn.n_z(),
            level.qn.n_theta(),
            fmt_json(level.energy),
            group_of[&level.qn],
            if i + 1 < levels.len() { "," } else { "" }
        ));
    }
    out.push_str("  ],\n  \"groups\":[\n");
    for (i, group) in groups.iter().enumerate() {
        let members = group
            .members()
            .iter()
            .map(|qn| format!("[{},{}]", qn.n_z(), qn.n_theta()))
            .collect::<Vec<_>>()
            .join(",");
        out.push_str(&format!(
            "    {{\"members\":[{}],\"energy\":{},\"multiplicity\":{}}}{}\n",
            members,
            fmt_json(group.energy()),
            group.multiplicity(),
            if i + 1 < groups.len() { "," } else { "" }
        ));
    }
    out.push_str("  ]\n}\n");
    out
}

fn render_csv(
    levels: &[EnergyLevel],
    groups: &[DegeneracyGroup],
    group_of: &HashMap<QuantumNumbers, usize>,
) -> String {
    let mut out = String::from("n_z,n_theta,energy,group,multiplicity\n");
    for level in levels {
        let g = group_of[&level.qn];
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            level.qn.n_z(),
            level.qn.n_theta(),
            fmt_json(level.energy),
            g,
            groups[g].multiplicity()
        ));
    }
    out
}
