use anyhow::anyhow;
use forestmask_core::groundtruth::{prepare_ground_truth, Legend, SceneSpec};
use forestmask_core::raster::{read_labels, write_labels};

use crate::failure::{Failure, ResultExt};
use crate::PrepareGtArgs;

/// Parses `row,col`.
pub fn parse_origin(s: &str) -> Result<(usize, usize), String> {
    let (row, col) = s
        .split_once(',')
        .ok_or_else(|| format!("expected `row,col`, got `{s}`"))?;
    let parse = |v: &str| {
        v.trim()
            .parse::<usize>()
            .map_err(|e| format!("invalid coordinate `{v}`: {e}"))
    };
    Ok((parse(row)?, parse(col)?))
}

pub fn run(args: &PrepareGtArgs) -> Result<(), Failure> {
    let labels =
        read_labels(&args.labels).input(|| format!("reading labels {}", args.labels.display()))?;
    let legend =
        Legend::read(&args.legend).input(|| format!("reading legend {}", args.legend.display()))?;
    let spec = SceneSpec::new(args.tile_side, args.scene_origin, args.scene_side)
        .input(|| "invalid scene placement".to_string())?;
    let fill = match args.fill {
        Some(fill) => fill,
        None => legend.first_ignore_index().ok_or_else(|| {
            Failure::Input(anyhow!(
                "legend has no ignore class to pad with; pass --fill"
            ))
        })?,
    };
    let out_side = args.out_side.unwrap_or(args.scene_side);

    let prepared = prepare_ground_truth(&labels, &legend, &spec, fill, out_side)
        .input(|| "preparing ground truth".to_string())?;

    if let Some(path) = &args.scene_out {
        write_labels(&prepared.scene, path).internal(|| format!("writing {}", path.display()))?;
    }
    write_labels(&prepared.resized, &args.out)
        .internal(|| format!("writing {}", args.out.display()))?;

    println!("input       {}x{}", labels.width(), labels.height());
    println!("padded      {0}x{0}", prepared.padded_side);
    println!(
        "scene crop  {0}x{0} at ({1}, {2})",
        prepared.crop.side, prepared.crop.row, prepared.crop.col
    );
    println!("resized     {0}x{0}", prepared.resized.width());
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::parse_origin;

    #[test]
    fn origin_parsing() {
        assert_eq!(parse_origin("12,340"), Ok((12, 340)));
        assert_eq!(parse_origin(" 1 , 2 "), Ok((1, 2)));
        assert!(parse_origin("12").is_err());
        assert!(parse_origin("a,1").is_err());
        assert!(parse_origin("-1,1").is_err());
    }
}
