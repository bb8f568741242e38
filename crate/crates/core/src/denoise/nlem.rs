use super::parallel::map_pixels;
use super::{nlm_denoise, Image, InitMode, NlemParams, PatchSource, PatchStack, Solver};
use crate::error::{Error, Result};
use crate::median::{
    admm_euclidean_median_with, irls_euclidean_median_with, AdmmConfig, IrlsConfig, PointSet,
    SolverResult,
};

/// Starting patch for a stack under the given initialization mode.
pub fn initial_patch(stack: &PatchStack, params: &NlemParams) -> Vec<f64> {
    match params.init {
        InitMode::NoisyPatch => stack.center_patch().to_vec(),
        InitMode::NlmPatch => {
            let mut p = stack.weighted_mean_patch();
            params.range.project_in_place(&mut p);
            p
        }
    }
}

/// Solves the box-constrained Euclidean median of one patch stack with
/// `iters` solver iterations, reporting every iterate to `observe`.
///
/// IRLS runs unconstrained and only its final minimizer is clipped; the
/// iterates handed to `observe` are unclipped.
pub fn solve_stack_with<F>(
    stack: PatchStack,
    params: &NlemParams,
    iters: usize,
    record_trace: bool,
    observe: F,
) -> Result<SolverResult>
where
    F: FnMut(usize, &[f64]),
{
    let init = initial_patch(&stack, params);
    let ps = PointSet::from_flat(stack.dim, stack.patches, stack.weights)?;
    match params.solver {
        Solver::Admm => {
            let cfg = AdmmConfig {
                mu: params.mu,
                max_iter: iters,
                tol_primal: 0.0,
                z_init: Some(init),
                record_trace,
            };
            admm_euclidean_median_with(&ps, &params.range, &cfg, observe)
        }
        Solver::Irls => {
            let cfg = IrlsConfig {
                epsilon: params.epsilon,
                max_iter: iters,
                tol: 0.0,
                x_init: Some(init),
                record_trace,
            };
            let mut res = irls_euclidean_median_with(&ps, &cfg, observe)?;
            params.range.project_in_place(&mut res.minimizer);
            res.objective = crate::median::em_cost(&ps, &res.minimizer)?;
            Ok(res)
        }
        Solver::Nlm => Err(Error::usage("NLM has no per-patch median solve")),
    }
}

/// Solves one stack with the configured iteration budget.
pub fn solve_stack(stack: PatchStack, params: &NlemParams) -> Result<SolverResult> {
    solve_stack_with(stack, params, params.solver_iters, false, |_, _| {})
}

/// Non-Local Euclidean Medians: every pixel is the centre of the weighted
/// Euclidean median of the patches in its search window, constrained to the
/// dynamic range.
///
/// With `Solver::Nlm` this is [`nlm_denoise`].
pub fn nlem_denoise(noisy: &Image, params: &NlemParams) -> Result<Image> {
    params.validate()?;
    if params.solver == Solver::Nlm {
        return nlm_denoise(noisy, params);
    }
    let src = PatchSource::new(noisy, params.patch)?;
    let data = map_pixels(noisy.height(), noisy.width(), |row, col| {
        let stack = PatchStack::build(&src, row, col, params.search, params.h)?;
        let center = stack.center_offset();
        Ok(solve_stack(stack, params)?.minimizer[center])
    })?;
    Image::new(noisy.width(), noisy.height(), data)
}

/// Denoised images after each of the first `iters` solver iterations, from a
/// single run per pixel. Entry `t - 1` equals `nlem_denoise` with
/// `solver_iters = t`.
pub fn nlem_denoise_iterates(
    noisy: &Image,
    params: &NlemParams,
    iters: usize,
) -> Result<Vec<Image>> {
    params.validate()?;
    if iters == 0 {
        return Err(Error::usage("need at least one iteration"));
    }
    if params.solver == Solver::Nlm {
        let once = nlm_denoise(noisy, params)?;
        return Ok(vec![once; iters]);
    }
    let src = PatchSource::new(noisy, params.patch)?;
    let per_pixel = map_pixels(noisy.height(), noisy.width(), |row, col| {
        let stack = PatchStack::build(&src, row, col, params.search, params.h)?;
        let center = stack.center_offset();
        let mut values = Vec::with_capacity(iters);
        solve_stack_with(stack, params, iters, false, |_, z| {
            values.push(params.range.clamp(z[center]))
        })?;
        Ok(values)
    })?;
    (0..iters)
        .map(|t| {
            Image::new(
                noisy.width(),
                noisy.height(),
                per_pixel.iter().map(|v| v[t]).collect(),
            )
        })
        .collect()
}

/// Objective histories of ADMM and IRLS at one pixel, plus a long-run IRLS
/// reference objective.
#[derive(Debug, Clone, PartialEq)]
pub struct PixelConvergence {
    pub row: usize,
    pub col: usize,
    /// Median cost of the ADMM consensus iterate after each iteration.
    pub admm_objectives: Vec<f64>,
    /// IRLS surrogate cost after each iteration.
    pub irls_surrogates: Vec<f64>,
    /// Median cost of the clipped IRLS minimizer after the reference budget.
    pub reference_objective: f64,
}

impl PixelConvergence {
    /// First ADMM iteration whose cost is within `rel_tol` (relative) of the
    /// reference, if any.
    pub fn admm_iterations_to(&self, rel_tol: f64) -> Option<usize> {
        let target = self.reference_objective * (1.0 + rel_tol);
        self.admm_objectives
            .iter()
            .position(|obj| *obj <= target)
            .map(|i| i + 1)
    }
}

/// Pixels `(r, c)` with both coordinates multiples of `stride`.
pub fn stride_pixels(height: usize, width: usize, stride: usize) -> Vec<(usize, usize)> {
    let stride = stride.max(1);
    (0..height)
        .step_by(stride)
        .flat_map(|r| (0..width).step_by(stride).map(move |c| (r, c)))
        .collect()
}

/// Runs `trace_iters` ADMM and IRLS iterations at each pixel from the same
/// starting patch, and `reference_iters` IRLS iterations for a reference
/// optimum. Solver choice in `params` is ignored.
pub fn convergence_survey(
    noisy: &Image,
    params: &NlemParams,
    pixels: &[(usize, usize)],
    trace_iters: usize,
    reference_iters: usize,
) -> Result<Vec<PixelConvergence>> {
    use rayon::prelude::*;
    params.validate()?;
    if trace_iters == 0 || reference_iters == 0 {
        return Err(Error::usage("iteration counts must be positive"));
    }
    let src = PatchSource::new(noisy, params.patch)?;
    let admm = NlemParams {
        solver: Solver::Admm,
        ..params.clone()
    };
    let irls = NlemParams {
        solver: Solver::Irls,
        ..params.clone()
    };
    let results: Vec<Result<PixelConvergence>> = pixels
        .par_iter()
        .map(|&(row, col)| {
            let wrap = |e: Error| Error::Pixel {
                row,
                col,
                source: Box::new(e),
            };
            let stack = PatchStack::build(&src, row, col, params.search, params.h)?;
            let a = solve_stack_with(stack.clone(), &admm, trace_iters, true, |_, _| {})
                .map_err(wrap)?;
            let i = solve_stack_with(stack.clone(), &irls, trace_iters, true, |_, _| {})
                .map_err(wrap)?;
            let reference =
                solve_stack_with(stack, &irls, reference_iters, false, |_, _| {}).map_err(wrap)?;
            Ok(PixelConvergence {
                row,
                col,
                admm_objectives: a.trace.iter().map(|t| t.objective).collect(),
                irls_surrogates: i.trace.iter().map(|t| t.objective).collect(),
                reference_objective: reference.objective,
            })
        })
        .collect();
    results.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::denoise::{add_gaussian_noise, psnr};
    use crate::median::em_cost;

    fn small_params(sigma: f64) -> NlemParams {
        NlemParams {
            search: 7,
            patch: 3,
            ..NlemParams::for_sigma(sigma)
        }
    }

    #[test]
    fn constant_image_is_fixed() {
        let img = Image::filled(10, 8, 42.0).unwrap();
        for solver in [Solver::Admm, Solver::Irls, Solver::Nlm] {
            let out = nlem_denoise(&img, &small_params(10.0).with_solver(solver)).unwrap();
            for v in out.data() {
                assert!((v - 42.0).abs() < 1e-9, "{solver:?}: {v}");
            }
        }
    }

    #[test]
    fn coincident_stack_returns_the_patch() {
        let img = Image::filled(9, 9, 100.0).unwrap();
        let src = PatchSource::new(&img, 3).unwrap();
        let stack = PatchStack::build(&src, 4, 4, 5, 50.0).unwrap();
        let res = solve_stack(stack, &small_params(10.0)).unwrap();
        assert!(res.minimizer.iter().all(|v| *v == 100.0));
    }

    #[test]
    fn dominant_weight_pulls_to_that_patch() {
        // Hand-built stack: a tiny h makes every weight vanish except the
        // exact self-match, so the median is the centre patch.
        let patches = vec![
            10.0, 20.0, 30.0, 40.0, //
            200.0, 180.0, 160.0, 140.0, //
            90.0, 90.0, 90.0, 90.0,
        ];
        let weights = vec![1.0, 1e-30, 1e-30];
        let stack = PatchStack {
            center_pixel: (0, 0),
            dim: 4,
            patches,
            positions: vec![(0, 0), (0, 1), (0, 2)],
            weights,
            self_index: 0,
        };
        let params = NlemParams {
            init: InitMode::NlmPatch,
            ..small_params(10.0)
        };
        let res = solve_stack_with(stack, &params, 50, false, |_, _| {}).unwrap();
        for (a, b) in res.minimizer.iter().zip([10.0, 20.0, 30.0, 40.0]) {
            assert!((a - b).abs() < 1e-6, "{a} vs {b}");
        }
    }

    #[test]
    fn outputs_stay_in_range_and_improve_psnr() {
        let clean = Image::from_fn(24, 24, |r, c| {
            if (r / 6 + c / 6) % 2 == 0 {
                20.0
            } else {
                230.0
            }
        })
        .unwrap();
        let noisy = add_gaussian_noise(&clean, 40.0, 1).unwrap();
        let out = nlem_denoise(&noisy, &small_params(40.0)).unwrap();
        assert!(out.data().iter().all(|v| (0.0..=255.0).contains(v)));
        let (before, after) = (psnr(&clean, &noisy).unwrap(), psnr(&clean, &out).unwrap());
        assert!(after > before + 1.0, "{before} -> {after}");
    }

    #[test]
    fn iterates_match_fixed_budget_runs() {
        let clean = Image::from_fn(12, 12, |r, c| (r * 20 + c * 3) as f64).unwrap();
        let noisy = add_gaussian_noise(&clean, 20.0, 4).unwrap();
        for solver in [Solver::Admm, Solver::Irls] {
            let params = small_params(20.0).with_solver(solver);
            let its = nlem_denoise_iterates(&noisy, &params, 3).unwrap();
            for t in 1..=3 {
                let once = nlem_denoise(
                    &noisy,
                    &NlemParams {
                        solver_iters: t,
                        ..params.clone()
                    },
                )
                .unwrap();
                assert_eq!(its[t - 1], once, "{solver:?} t={t}");
            }
        }
    }

    #[test]
    fn admm_does_not_worsen_the_start() {
        let clean = Image::from_fn(20, 20, |r, c| ((r * 13 + c * 7) % 11) as f64 * 20.0).unwrap();
        let noisy = add_gaussian_noise(&clean, 30.0, 8).unwrap();
        let params = small_params(30.0);
        let src = PatchSource::new(&noisy, params.patch).unwrap();
        let mut worse = 0;
        let mut total = 0;
        for (r, c) in stride_pixels(20, 20, 3) {
            let stack = PatchStack::build(&src, r, c, params.search, params.h).unwrap();
            let ps = PointSet::from_flat(stack.dim, stack.patches.clone(), stack.weights.clone())
                .unwrap();
            let start = em_cost(&ps, &initial_patch(&stack, &params)).unwrap();
            let res = solve_stack(stack, &params).unwrap();
            total += 1;
            if res.objective > start + 1e-6 {
                worse += 1;
            }
        }
        assert!(worse * 100 < total, "{worse} of {total}");
    }

    #[test]
    fn survey_shapes() {
        let clean = Image::from_fn(16, 16, |r, c| (r * 10 + c) as f64).unwrap();
        let noisy = add_gaussian_noise(&clean, 40.0, 2).unwrap();
        let pixels = stride_pixels(16, 16, 8);
        assert_eq!(pixels, vec![(0, 0), (0, 8), (8, 0), (8, 8)]);
        let survey = convergence_survey(&noisy, &small_params(40.0), &pixels, 5, 50).unwrap();
        assert_eq!(survey.len(), 4);
        for p in &survey {
            assert_eq!(p.admm_objectives.len(), 5);
            for w in p.irls_surrogates.windows(2) {
                assert!(w[1] <= w[0] + 1e-12 * w[0]);
            }
        }
    }
}
