use crate::args::GenArgs;
use anyhow::{bail, Context, Result};
use cmcs::ap3::{Ap3Instance, Family};
use cmcs::seed::{derive, STREAM_GEN};

const SQRT_EXACT_SCALE: i64 = 1000;

fn family_tag(family: Family) -> u64 {
    match family {
        Family::Random => 0,
        Family::Clique => 1,
        Family::SquareRoot => 2,
        Family::External => 3,
    }
}

pub fn run(args: &GenArgs) -> Result<()> {
    let mut families = Vec::new();
    for token in &args.families {
        let family = Family::from_token(token)
            .with_context(|| format!("unknown family `{token}` (random, clique, sqrt)"))?;
        if family == Family::External {
            bail!("family `external` marks imported instances and cannot be generated");
        }
        if families.contains(&family) {
            bail!("family `{token}` listed twice");
        }
        families.push(family);
    }
    if args.sizes.iter().any(|&n| n == 0) {
        bail!("instance sizes must be positive");
    }
    if args.count == 0 {
        bail!("--count must be positive");
    }

    std::fs::create_dir_all(&args.out_dir)
        .with_context(|| format!("creating `{}`", args.out_dir.display()))?;
    let mut written = 0usize;
    for &family in &families {
        for &n in &args.sizes {
            for index in 0..args.count {
                let seed = derive(&[
                    args.seed,
                    STREAM_GEN,
                    family_tag(family),
                    n as u64,
                    index as u64,
                ]);
                let instance = if args.sqrt_exact && family == Family::SquareRoot {
                    let mut scaled =
                        Ap3Instance::generate_scaled(family, n, seed, SQRT_EXACT_SCALE)?;
                    scaled.set_name(format!("{}-x{}", scaled.name(), SQRT_EXACT_SCALE));
                    scaled
                } else {
                    Ap3Instance::generate(family, n, seed)?
                };
                let path = args.out_dir.join(format!("{}.ap3", instance.name()));
                instance
                    .save(&path)
                    .with_context(|| format!("writing `{}`", path.display()))?;
                written += 1;
            }
        }
    }
    println!("wrote {written} instances to {}", args.out_dir.display());
    Ok(())
}
