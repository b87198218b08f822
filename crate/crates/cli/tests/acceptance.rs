//! Acceptance gate: eleven end-to-end checks over the whole workspace, each
//! printing one `[PASS]`/`[FAIL]` line with its measured quantities. The
//! checks run at full size (thousands of scenarios, 10^5 prior draws,
//! 10^4-member libraries) and enforce the stated statistical tolerances and
//! wall-clock budgets, so this target is slower than the per-crate suites.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see every
//! verdict line even on success.

use std::f64::consts::TAU;
use std::time::Instant;

use epiforge_attrib::{
    embed, validate_attribution, validate_null, EmbeddingInput, LibraryEntry, LibraryIndex,
    TrajectoryEmbedding,
};
use epiforge_core::observation::{delay_weights, reporting_rate};
use epiforge_core::{
    mix_seed, observe_window, outcomes_window, run_scenario, run_truth, sample_scenario,
    DayEvents, DemographicsConfig, EpiParams, GammaDelay, H2hSim, Harmonic, InitConfig,
    InterventionConfig, Mode, ModeMix, ObservationConfig, OutcomeConfig, Outcomes,
    ReportingConfig, RngStream, SamplerOptions, ScenarioConfig, SeasonalityConfig, SimRng,
    SuperSpreadConfig, VectorParams, VectorSim, WaterParams, WaterRouteConfig, WaterSim,
    WaveSchedule, STREAM_OBSERVATION, STREAM_OUTCOMES, STREAM_TRUTH,
};
use epiforge_data::{
    generate_corpus, preprocess_series, scenario_config_at, weekly_sums, ExclusionRule,
    GenerationSpec, Preprocessed,
};
use epiforge_core::{ObservedSeries, Resolution};
use epiforge_forecast::{
    ets_fit, ets_fit_fixed, ets_point_forecast, ets_select, interval_coverage,
    persistence_forecast, pinball_loss, ErrorKind, EtsParams, EtsSpec, ForecastQuantiles,
    TrendKind, QUANTILE_LEVELS,
};
use rand::Rng;

/// Prints the check's verdict line, then enforces it.
fn verdict(name: &str, pass: bool, detail: &str) {
    let tag = if pass { "[PASS]" } else { "[FAIL]" };
    println!("{tag} {name}: {detail}");
    assert!(pass, "{name}: {detail}");
}

fn stream(seed: u64, id: u64) -> SimRng {
    RngStream::new(seed, id).rng()
}

/// Daily transition probability for a rate, as used by every simulator.
fn prob(rate: f64) -> f64 {
    -(-rate).exp_m1()
}

/// Outcome layer for scenarios whose clinical channels are irrelevant.
fn inert_outcomes() -> OutcomeConfig {
    OutcomeConfig {
        p_hospital: WaveSchedule::constant(0.05),
        p_death: WaveSchedule::constant(0.1),
        hospital_delay: GammaDelay { shape: 2.0, scale: 2.0 },
        death_delay: GammaDelay { shape: 2.0, scale: 3.0 },
        max_delay: 60,
    }
}

// ---------------------------------------------------------------------------
// 01 — population conservation
// ---------------------------------------------------------------------------

#[test]
fn check_01_population_conservation() {
    let start = Instant::now();
    let scenarios = 1000usize;
    let mut checked_days = 0u64;
    for i in 0..scenarios {
        let mode = if i % 2 == 0 { Mode::HumanToHuman } else { Mode::Waterborne };
        let mut rng = stream(0xC0’_u64 ^ 0xC0A5E001, i as u64);
        let mut config = sample_scenario(mode, &mut rng);
        config.demographics = DemographicsConfig::disabled();
        let trajectory = run_truth(&config).expect("valid sampled scenario");
        assert_eq!(trajectory.initial.total(), config.population, "scenario {i} initial state");
        assert_eq!(trajectory.days() as u32, config.days);
        for (d, comps) in trajectory.compartments.iter().enumerate() {
            assert_eq!(
                comps.total(),
                config.population,
                "scenario {i} ({}) leaked people on day {d}",
                mode.name(),
            );
        }
        checked_days += trajectory.days() as u64;
    }
    let elapsed = start.elapsed().as_secs_f64();
    verdict(
        "01 population conservation",
        elapsed < 120.0,
        &format!(
            "{scenarios} contact/waterborne scenarios, {checked_days} person-conserving days, \
             {elapsed:.1}s (< 120s)"
        ),
    );
}

// ---------------------------------------------------------------------------
// 02 — stochastic ensembles track the deterministic expectation recursion
// ---------------------------------------------------------------------------

/// Shared human-side expectation update; returns the day's expected new
/// exposures. `exposure_rate` is the day's total infection rate per
/// susceptible.
struct MeanState {
    s: f64,
    e: f64,
    a: f64,
    i: f64,
    r: f64,
}

fn mean_human_day(st: &mut MeanState, epi: &EpiParams, exposure_rate: f64) -> f64 {
    let exposures = st.s * prob(exposure_rate);
    let new_infectious = if epi.has_latent { st.e * prob(epi.sigma) } else { exposures };
    let new_asym = if epi.has_asymptomatic { new_infectious * epi.p_asymptomatic } else { 0.0 };
    let new_sym = new_infectious - new_asym;
    let rec_i = st.i * prob(epi.gamma);
    let rec_a = st.a * prob(epi.gamma_a);
    let waned = if epi.has_waning { st.r * prob(epi.omega) } else { 0.0 };
    st.s = st.s - exposures + waned;
    if epi.has_latent {
        st.e = st.e - new_infectious + exposures;
    }
    st.a = st.a - rec_a + new_asym;
    st.i = st.i - rec_i + new_sym;
    st.r = st.r - waned + rec_i + rec_a;
    exposures
}

/// Noiseless seasonal factor; the config must carry no jitter or noise.
fn det_seasonal(config: &SeasonalityConfig, t: u32) -> f64 {
    assert_eq!(config.annual_jitter_days, 0.0, "forcing must be noiseless");
    assert_eq!(config.daily_noise_sd, 0.0, "forcing must be noiseless");
    if !config.enabled {
        return config.baseline;
    }
    let mut s = config.baseline;
    for h in &config.harmonics {
        s += h.amplitude * (TAU * (t as f64 - h.phase) / h.period).cos();
    }
    s.max(0.0)
}

fn det_exposures_h2h(config: &ScenarioConfig) -> Vec<f64> {
    let n = config.population as f64;
    let mut st = MeanState {
        s: n - config.init.infectious as f64,
        e: 0.0,
        a: 0.0,
        i: config.init.infectious as f64,
        r: 0.0,
    };
    (0..config.days)
        .map(|t| {
            let seas = det_seasonal(&config.seasonality, t);
            let lambda = config.beta.value_at(t) * seas * (st.i + config.epi.alpha * st.a) / n;
            mean_human_day(&mut st, &config.epi, lambda)
        })
        .collect()
}

fn det_exposures_vector(config: &ScenarioConfig) -> Vec<f64> {
    let n = config.population as f64;
    let vp = config.vector.expect("vector parameters");
    let n_v0 = (n * vp.ratio).round();
    let mut st = MeanState {
        s: n - config.init.infectious as f64,
        e: 0.0,
        a: 0.0,
        i: config.init.infectious as f64,
        r: 0.0,
    };
    let mut vs = n_v0 - config.init.vector_exposed as f64;
    let mut ve = config.init.vector_exposed as f64;
    let mut vi = 0.0;
    (0..config.days)
        .map(|t| {
            let seas = det_seasonal(&config.seasonality, t);
            let shared = vp.biting_rate * config.beta.value_at(t) * seas;
            let n_v = vs + ve + vi;
            let lambda_h =
                if n_v > 0.0 { shared * vp.to_human * vi / n_v } else { 0.0 };
            let lambda_v = shared * vp.to_vector * (st.i + config.epi.alpha * st.a) / n;
            let exposures = mean_human_day(&mut st, &config.epi, lambda_h);
            let v_exp = vs * prob(lambda_v);
            let v_on = ve * prob(vp.sigma_v);
            vs -= v_exp;
            ve += v_exp - v_on;
            vi += v_on;
            let survivors = 1.0 - vp.mu_v;
            let total = vs + ve + vi;
            vs = vs * survivors + vp.mu_v * total;
            ve *= survivors;
            vi *= survivors;
            exposures
        })
        .collect()
}

fn det_exposures_water(config: &ScenarioConfig) -> Vec<f64> {
    let n = config.population as f64;
    let route = config.water.as_ref().expect("reservoir parameters");
    let mut st = MeanState {
        s: n - config.init.infectious as f64,
        e: 0.0,
        a: 0.0,
        i: config.init.infectious as f64,
        r: 0.0,
    };
    let mut w = config.init.initial_reservoir.max(0.0);
    (0..config.days)
        .map(|t| {
            let seas = det_seasonal(&config.seasonality, t);
            let lambda_c =
                config.beta.value_at(t) * seas * (st.i + config.epi.alpha * st.a) / n;
            let lambda_w = route.delta.value_at(t) * seas * w;
            let exposures = mean_human_day(&mut st, &config.epi, lambda_c + lambda_w);
            let shed =
                route.params.shedding_rate * (st.i + route.params.asym_shedding * st.a);
            w = (w + shed - route.params.decay_rate * w).max(0.0);
            exposures
        })
        .collect()
}

/// A large-population scenario skeleton: no super-spreading, no
/// intervention, no demographics, noiseless forcing.
fn mean_field_base(mode: Mode, days: u32, infectious: u64) -> ScenarioConfig {
    ScenarioConfig {
        mode,
        seed: 0,
        population: 10_000_000,
        days,
        epi: EpiParams {
            sigma: 0.25,
            gamma: 0.16,
            gamma_a: 0.2,
            omega: 0.0,
            p_asymptomatic: 0.3,
            alpha: 0.5,
            has_latent: true,
            has_asymptomatic: true,
            has_waning: false,
        },
        beta: WaveSchedule::constant(0.32),
        vector: None,
        water: None,
        seasonality: SeasonalityConfig::disabled(1.0),
        superspread: SuperSpreadConfig::disabled(),
        intervention: InterventionConfig::disabled(),
        demographics: DemographicsConfig::disabled(),
        init: InitConfig {
            immune: 0,
            infectious,
            vector_exposed: 0,
            initial_reservoir: 0.0,
        },
        outcomes: inert_outcomes(),
        observation: ObservationConfig::transparent(),
    }
}

#[test]
fn check_02_ensemble_mean_matches_expectation_recursion() {
    let start = Instant::now();
    let replicates = 200u64;

    let mut h2h = mean_field_base(Mode::HumanToHuman, 400, 10_000);
    h2h.seasonality = SeasonalityConfig {
        enabled: true,
        baseline: 1.0,
        harmonics: vec![Harmonic { amplitude: 0.15, period: 365.0, phase: 40.0 }],
        annual_jitter_days: 0.0,
        daily_noise_sd: 0.0,
    };

    let mut vector = mean_field_base(Mode::VectorBorne, 500, 1_000);
    vector.beta = WaveSchedule::constant(0.65);
    vector.epi.sigma = 0.3;
    vector.epi.gamma = 0.14;
    vector.epi.has_asymptomatic = false;
    vector.epi.p_asymptomatic = 0.0;
    vector.vector = Some(VectorParams {
        biting_rate: 0.6,
        to_human: 0.5,
        to_vector: 0.5,
        sigma_v: 0.2,
        mu_v: 0.08,
        ratio: 1.5,
    });
    vector.init.vector_exposed = 20_000;

    let mut water = mean_field_base(Mode::Waterborne, 400, 2_000);
    water.beta = WaveSchedule::constant(0.01);
    water.epi.has_latent = false;
    water.epi.gamma = 0.125;
    water.epi.gamma_a = 0.15;
    water.epi.p_asymptomatic = 0.25;
    water.water = Some(WaterRouteConfig {
        delta: WaveSchedule::constant(6.0e-7),
        params: WaterParams { shedding_rate: 0.005, asym_shedding: 0.3, decay_rate: 0.1 },
    });

    let cases: [(&str, ScenarioConfig, fn(&ScenarioConfig) -> Vec<f64>); 3] = [
        ("h2h", h2h, det_exposures_h2h),
        ("vector", vector, det_exposures_vector),
        ("water", water, det_exposures_water),
    ];

    let mut details = Vec::new();
    let mut all_ok = true;
    for (name, config, recursion) in &cases {
        let expected = recursion(config);
        let days = config.days as usize;
        let mut mean = vec![0.0f64; days];
        for rep in 0..replicates {
            let mut c = config.clone();
            c.seed = mix_seed(&[0x0E25, rep]);
            let trajectory = run_truth(&c).expect("valid mean-field scenario");
            for (m, &x) in mean.iter_mut().zip(&trajectory.new_exposures) {
                *m += x as f64;
            }
        }
        for m in &mut mean {
            *m /= replicates as f64;
        }
        let peak = expected
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.partial_cmp(b.1).unwrap())
            .map(|(t, _)| t)
            .unwrap();
        assert!(
            peak > 10 && peak < days - 10,
            "{name}: expectation peak at day {peak} sits at the horizon edge"
        );
        assert!(expected[peak] > 10_000.0, "{name}: expectation peak too small to test");
        let rel = (mean[peak] - expected[peak]).abs() / expected[peak];
        details.push(format!("{name} peak day {peak} rel err {:.3}%", rel * 100.0));
        all_ok &= rel <= 0.02;
    }
    let elapsed = start.elapsed().as_secs_f64();
    all_ok &= elapsed < 300.0;
    verdict(
        "02 ensemble mean vs expectation recursion",
        all_ok,
        &format!(
            "{replicates}-replicate ensembles at N=1e7: {}; {elapsed:.1}s (< 300s)",
            details.join(", ")
        ),
    );
}

// ---------------------------------------------------------------------------
// 03 — observation-stage numerics
// ---------------------------------------------------------------------------

#[test]
fn check_03_observation_numerics() {
    // Harmonic dispatch weights: alpha = 3 makes every division exact in
    // binary (3/1, 3/2 are representable and 3/5.5 = 6/11 as reals), so the
    // result must equal the target fractions bit for bit.
    let w = delay_weights(3.0, 2);
    let exact = w == vec![6.0 / 11.0, 3.0 / 11.0, 2.0 / 11.0];
    let close = delay_weights(1.0, 2)
        .iter()
        .zip([6.0 / 11.0, 3.0 / 11.0, 2.0 / 11.0])
        .all(|(a, b)| (a - b).abs() < 1e-15);
    let alpha_cancels = delay_weights(1.0, 2) == delay_weights(4.0, 2);

    // Logistic reporting ramp: halfway through the ramp the rate must sit at
    // the midpoint of its endpoints.
    let mut mid_ok = true;
    for (initial_rate, max_rate, days_to_max, steepness) in
        [(0.2, 0.8, 200.0, 6.0), (0.05, 0.85, 365.0, 4.0), (0.4, 0.4, 100.0, 8.0)]
    {
        let cfg = ReportingConfig { initial_rate, max_rate, days_to_max, steepness };
        let got = reporting_rate(days_to_max / 2.0, &cfg);
        mid_ok &= (got - (initial_rate + max_rate) / 2.0).abs() <= 1e-12;
    }

    // Constant thinning at rate 0.3 over 10^3 independent days of 10^4
    // true cases: the mean kept count estimates 3000 to within 3 SE.
    let days = 1000usize;
    let truth = vec![10_000u64; days];
    let zeros = Outcomes { hospitalizations: vec![0; days], deaths: vec![0; days] };
    let thin = ObservationConfig {
        mult_noise_sd: 0.0,
        overdispersion: 0.0,
        reporting: Some(ReportingConfig {
            initial_rate: 0.3,
            max_rate: 0.3,
            days_to_max: 100.0,
            steepness: 5.0,
        }),
        lab: None,
        delays: None,
        weekday: None,
    };
    let mut rng = stream(0x7113, 0);
    let obs = observe_window(&truth, &zeros, 0, 0, days, days, &thin, &mut rng);
    let mean = obs.cases.iter().map(|&c| c as f64).sum::<f64>() / days as f64;
    let se = (10_000.0f64 * 0.3 * 0.7).sqrt() / (days as f64).sqrt();
    let thin_ok = (mean - 3000.0).abs() <= 3.0 * se;

    verdict(
        "03 observation numerics",
        exact && close && alpha_cancels && mid_ok && thin_ok,
        &format!(
            "dispatch weights [6/11,3/11,2/11] exact={exact}, ramp midpoint <=1e-12: {mid_ok}, \
             thinning mean {mean:.1} vs 3000 (3 SE = {:.2})",
            3.0 * se
        ),
    );
}

// ---------------------------------------------------------------------------
// 04 — clinical severity chain
// ---------------------------------------------------------------------------

#[test]
fn check_04_severity_chain() {
    let start = Instant::now();

    // 10^5 symptomatic onsets at 10% admission and 20% in-hospital death:
    // expected deaths 2000. Var(D) = E[H] p_d (1-p_d) + p_d^2 Var(H) = 1960.
    let mut series = vec![0u64; 200];
    series[0] = 100_000;
    let cfg = OutcomeConfig {
        p_hospital: WaveSchedule::constant(0.1),
        p_death: WaveSchedule::constant(0.2),
        hospital_delay: GammaDelay { shape: 2.5, scale: 2.0 },
        death_delay: GammaDelay { shape: 2.0, scale: 5.0 },
        max_delay: 60,
    };
    let replicates = 1000usize;
    let mut total = 0.0f64;
    let mut rng = stream(0xD0C5, 0);
    for _ in 0..replicates {
        let out = outcomes_window(&series, 0, 0, series.len(), &cfg, &mut rng);
        total += out.deaths.iter().sum::<u64>() as f64;
    }
    let mean = total / replicates as f64;
    let se = (1960.0f64).sqrt() / (replicates as f64).sqrt();
    let mean_ok = (mean - 2000.0).abs() <= 3.0 * se;

    // On random scenarios the chain can never report more severe events
    // than it has milder ones, on any day-prefix.
    let scenarios = 1000usize;
    let mix = ModeMix::default();
    let options = SamplerOptions::default();
    let mut order_ok = true;
    'outer: for i in 0..scenarios {
        let config = scenario_config_at(0x5EV1 ^ 0x5E01, i as u32, &mix, &options);
        let run = run_scenario(&config).expect("valid sampled scenario");
        let mut cum_c = 0u64;
        let mut cum_h = 0u64;
        let mut cum_d = 0u64;
        for d in 0..config.days as usize {
            cum_c += run.trajectory.new_symptomatic[d];
            cum_h += run.outcomes.hospitalizations[d];
            cum_d += run.outcomes.deaths[d];
            if !(cum_d <= cum_h && cum_h <= cum_c) {
                order_ok = false;
                println!(
                    "severity order violated: scenario {i} day {d}: \
                     deaths {cum_d}, hospitalizations {cum_h}, cases {cum_c}"
                );
                break 'outer;
            }
        }
    }

    let elapsed = start.elapsed().as_secs_f64();
    verdict(
        "04 severity chain",
        mean_ok && order_ok,
        &format!(
            "mean deaths {mean:.1} vs 2000 (3 SE = {:.2}); cumulative deaths <= \
             hospitalizations <= cases on every prefix of {scenarios} scenarios; {elapsed:.1}s",
            3.0 * se
        ),
    );
}

// ---------------------------------------------------------------------------
// 05 — prior fidelity
// ---------------------------------------------------------------------------

/// Closed-interval membership with a relative guard for bounds produced
/// through ln/exp round trips.
fn within(x: f64, lo: f64, hi: f64) -> bool {
    let slack = 1e-9 * hi.abs().max(1.0);
    x >= lo - slack && x <= hi + slack
}

/// First range violation in a sampled configuration, if any.
fn audit_config(config: &ScenarioConfig) -> Result<(), String> {
    let fail = |what: &str| Err(format!("{what} ({})", config.mode));
    if config.days != 2000 {
        return fail("horizon is not 2000 days");
    }
    if !(50_000..=40_000_000).contains(&config.population) {
        return fail("population outside [5e4, 4e7]");
    }
    let epi = &config.epi;
    if !within(epi.sigma, 0.2, 0.4) {
        return fail("sigma outside [0.2, 0.4]");
    }
    if !within(epi.gamma, 0.1, 0.33) || !within(epi.gamma_a, 0.1, 0.33) {
        return fail("recovery rate outside [0.1, 0.33]");
    }
    let (omega_lo, omega_hi) = match config.mode {
        Mode::HumanToHuman => (0.001, 0.0075),
        Mode::VectorBorne => (0.003, 0.02),
        Mode::Waterborne => (0.001, 0.01),
    };
    if !within(epi.omega, omega_lo, omega_hi) {
        return fail("waning rate outside its mode range");
    }
    if !(0.0..=1.0).contains(&epi.p_asymptomatic) || !(0.0..=1.0).contains(&epi.alpha) {
        return fail("shape-distributed probability left [0, 1]");
    }
    if config.mode == Mode::VectorBorne && !epi.has_waning {
        return fail("vector-borne scenario without waning");
    }

    let (beta_lo, beta_hi) = match config.mode {
        Mode::HumanToHuman => (0.2, 0.235),
        Mode::VectorBorne => (0.5, 0.7),
        Mode::Waterborne => (0.0, 0.05),
    };
    if !config.beta.values().iter().all(|&b| within(b, beta_lo, beta_hi)) {
        return fail("transmissibility outside its mode range");
    }
    let max_changes = if config.mode == Mode::Waterborne { 7 } else { 4 };
    let changes = config.beta.change_days();
    if changes.len() > max_changes {
        return fail("too many wave changes");
    }
    if !changes.windows(2).all(|w| w[0] < w[1]) {
        return fail("wave change days not strictly increasing");
    }
    if !changes.iter().all(|&d| (50..=1800).contains(&d)) {
        return fail("wave change day outside [50, 1800]");
    }

    match (config.mode, &config.vector, &config.water) {
        (Mode::VectorBorne, Some(vp), None) => {
            if !within(vp.ratio, 2.0, 10.0)
                || !within(vp.mu_v, 0.03, 0.10)
                || !within(vp.sigma_v, 0.15, 0.30)
                || !within(vp.biting_rate, 0.40, 0.80)
                || !within(vp.to_human, 0.35, 0.75)
                || !within(vp.to_vector, 0.35, 0.75)
            {
                return fail("vector parameter outside its range");
            }
        }
        (Mode::Waterborne, None, Some(route)) => {
            if !route.delta.values().iter().all(|&d| within(d, 0.0005, 0.01)) {
                return fail("reservoir infectivity outside [0.0005, 0.01]");
            }
            if route.delta.change_days() != config.beta.change_days() {
                return fail("reservoir schedule does not share the wave change days");
            }
            let wp = &route.params;
            if !within(wp.shedding_rate, 0.001, 0.01)
                || !(0.0..=1.0).contains(&wp.asym_shedding)
                || !within(wp.decay_rate, 0.05, 0.3)
            {
                return fail("reservoir parameter outside its range");
            }
        }
        (Mode::HumanToHuman, None, None) => {}
        _ => return fail("mode-specific parameter block does not match the mode"),
    }

    let seas = &config.seasonality;
    let (baseline, amp_hi) = match config.mode {
        Mode::HumanToHuman => (1.0, 0.5),
        Mode::VectorBorne => (1.2, 1.25),
        Mode::Waterborne => (1.0, 1.5),
    };
    if seas.baseline != baseline {
        return fail("seasonal baseline is not its mode constant");
    }
    if seas.enabled {
        if seas.harmonics.is_empty() || seas.harmonics.len() > 4 {
            return fail("harmonic count outside [1, 4]");
        }
        for h in &seas.harmonics {
            if !(h.amplitude > 0.0 && h.amplitude <= amp_hi + 1e-9) {
                return fail("harmonic amplitude outside its range");
            }
            if ![365.0, 182.5, 91.25].contains(&h.period) {
                return fail("harmonic period not an annual divisor");
            }
            if !within(h.phase, -60.0, 425.0) {
                return fail("harmonic phase outside [-60, 425]");
            }
        }
    } else if !seas.harmonics.is_empty() {
        return fail("disabled forcing carries harmonics");
    }

    let ss = &config.superspread;
    match config.mode {
        Mode::VectorBorne => {
            if ss.probability != 0.0 {
                return fail("vector-borne scenario with super-spreading");
            }
        }
        Mode::HumanToHuman => {
            if !within(ss.probability, 0.0005, 0.02) {
                return fail("super-spreading probability outside [0.0005, 0.02]");
            }
        }
        Mode::Waterborne => {
            if !within(ss.probability, 0.0002, 0.02) {
                return fail("super-spreading probability outside [0.0002, 0.02]");
            }
        }
    }

    let iv = &config.intervention;
    if iv.enabled {
        let pop = config.population as f64;
        if !within(iv.on_threshold, pop * 1e-5, pop * 1e-3) {
            return fail("intervention trigger outside population * [1e-5, 1e-3]");
        }
        if !(iv.off_threshold >= 0.0 && iv.off_threshold <= iv.on_threshold + 1e-9) {
            return fail("release threshold above the trigger");
        }
        if !within(iv.reduction, 0.2, 0.6) {
            return fail("intervention reduction outside [0.2, 0.6]");
        }
        match (config.mode, iv.water_reduction) {
            (Mode::Waterborne, Some(wr)) => {
                if !within(wr, 0.3, 0.7) {
                    return fail("environmental reduction outside [0.3, 0.7]");
                }
            }
            (Mode::Waterborne, None) => return fail("waterborne intervention without route factor"),
            (_, None) => {}
            (_, Some(_)) => return fail("non-waterborne intervention with route factor"),
        }
        if iv.trigger_delay > 21
            || !(14..=35).contains(&iv.min_duration)
            || !(1..=50).contains(&iv.consecutive_off_days)
        {
            return fail("intervention timing outside its ranges");
        }
        if let Some(cap) = iv.max_duration {
            if !(60..=120).contains(&cap) {
                return fail("intervention cap outside [60, 120]");
            }
        }
    }

    let demo = &config.demographics;
    if demo.enabled {
        if !within(demo.birth_rate, 2e-5, 1.2e-4) {
            return fail("birth rate outside [2e-5, 1.2e-4]");
        }
        if !within(demo.death_rate, demo.birth_rate * 0.8, demo.birth_rate * 1.3) {
            return fail("death rate outside birth rate * [0.8, 1.3]");
        }
        if !within(demo.importation_rate, 0.01, 0.5) {
            return fail("importation rate outside [0.01, 0.5]");
        }
    }

    let out = &config.outcomes;
    let (ph_lo, ph_hi, pd_lo, pd_hi) = match config.mode {
        Mode::VectorBorne => (0.05, 0.20, 0.10, 0.40),
        _ => (0.02, 0.15, 0.05, 0.30),
    };
    if !out.p_hospital.values().iter().all(|&p| within(p, ph_lo, ph_hi)) {
        return fail("admission probability outside its mode range");
    }
    if !out.p_death.values().iter().all(|&p| within(p, pd_lo, pd_hi)) {
        return fail("death probability outside its mode range");
    }
    if out.p_hospital.change_days() != config.beta.change_days()
        || out.p_death.change_days() != config.beta.change_days()
    {
        return fail("severity schedules do not share the wave change days");
    }
    if !within(out.hospital_delay.shape, 2.0, 4.0) || !within(out.hospital_delay.scale, 1.0, 3.0) {
        return fail("admission delay outside its ranges");
    }
    let (ds_lo, ds_hi) = match config.mode {
        Mode::HumanToHuman => (4.5, 8.5),
        _ => (2.0, 5.0),
    };
    if !within(out.death_delay.shape, 1.5, 2.5) || !within(out.death_delay.scale, ds_lo, ds_hi) {
        return fail("death delay outside its ranges");
    }
    if out.max_delay != 60 {
        return fail("outcome dispatch cap is not 60 days");
    }

    let obs = &config.observation;
    if obs.mult_noise_sd != 0.1 {
        return fail("multiplicative noise sd is not 0.1");
    }
    let expected_od = if config.mode == Mode::Waterborne { 100.0 } else { 1200.0 };
    if obs.overdispersion != expected_od {
        return fail("overdispersion is not its mode constant");
    }
    if let Some(rep) = &obs.reporting {
        if !within(rep.initial_rate, 0.05, 0.4)
            || !within(rep.max_rate, 0.25, 0.85)
            || rep.initial_rate > rep.max_rate
            || !within(rep.days_to_max, 30.0, 365.0)
            || !within(rep.steepness, 4.0, 8.0)
        {
            return fail("reporting ramp outside its ranges");
        }
    }
    if let Some(delays) = &obs.delays {
        if !(7..=21).contains(&delays.initial_max_delay)
            || !(2..=7).contains(&delays.final_max_delay)
            || delays.initial_alpha != 1.0
            || delays.final_alpha != 4.0
            || !within(delays.ramp_days, 30.0, 365.0)
        {
            return fail("dispatch-delay ramp outside its ranges");
        }
    }
    if let Some(weekday) = &obs.weekday {
        if !weekday.factors.iter().all(|&f| within(f, 0.05, 3.0)) {
            return fail("weekday factor outside [0.05, 3.0]");
        }
        if weekday.start_weekday > 6 {
            return fail("start weekday outside [0, 6]");
        }
    }
    if let Some(lab) = &obs.lab {
        if lab.batch_mean != 100.0
            || lab.bad_batch_rate != 0.005
            || lab.accuracy_min != 0.7
            || lab.accuracy_max != 0.85
        {
            return fail("lab-batching constants drifted");
        }
    }

    if config.mode != Mode::VectorBorne && config.init.vector_exposed != 0 {
        return fail("non-vector scenario with exposed vectors");
    }
    if config.init.initial_reservoir != 0.0 {
        return fail("scenario with a pre-charged reservoir");
    }
    Ok(())
}

/// Kolmogorov–Smirnov statistic of `values` against Uniform[lo, hi].
fn ks_uniform(values: &mut [f64], lo: f64, hi: f64) -> f64 {
    values.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = values.len() as f64;
    let mut d = 0.0f64;
    for (i, &x) in values.iter().enumerate() {
        let f = ((x - lo) / (hi - lo)).clamp(0.0, 1.0);
        d = d.max(f - i as f64 / n).max((i + 1) as f64 / n - f);
    }
    d
}

#[test]
fn check_05_prior_fidelity() {
    let start = Instant::now();
    let draws = 100_000usize;
    let mut details = Vec::new();
    let mut all_ok = true;

    for (mode_idx, mode) in Mode::ALL.iter().enumerate() {
        let mut rng = stream(0xP512 ^ 0xA512, mode_idx as u64);
        let mut sum_pa = 0.0f64;
        let mut sum_alpha = 0.0f64;
        let mut flags = [0u64; 10];
        let mut log_pops = Vec::with_capacity(draws);
        for i in 0..draws {
            let config = sample_scenario(*mode, &mut rng);
            if let Err(what) = audit_config(&config) {
                verdict(
                    "05 prior fidelity",
                    false,
                    &format!("draw {i} of mode {mode}: {what}"),
                );
            }
            sum_pa += config.epi.p_asymptomatic;
            sum_alpha += config.epi.alpha;
            let f = [
                config.epi.has_latent,
                config.epi.has_asymptomatic,
                config.epi.has_waning,
                config.seasonality.enabled,
                config.intervention.enabled,
                config.demographics.enabled,
                config.observation.reporting.is_some(),
                config.observation.weekday.is_some(),
                config.observation.lab.is_some(),
                config.observation.delays.is_some(),
            ];
            for (count, hit) in flags.iter_mut().zip(f) {
                *count += hit as u64;
            }
            log_pops.push((config.population as f64).ln());
        }
        let n = draws as f64;

        // Beta(3, 7) and Beta(2, 5) means, 3 SE at n = 1e5.
        let pa_mean = sum_pa / n;
        let pa_se = (21.0f64 / 1100.0).sqrt() / n.sqrt();
        all_ok &= (pa_mean - 0.3).abs() <= 3.0 * pa_se;
        let alpha_mean = sum_alpha / n;
        let alpha_se = (10.0f64 / (49.0 * 8.0)).sqrt() / n.sqrt();
        all_ok &= (alpha_mean - 2.0 / 7.0).abs() <= 3.0 * alpha_se;

        // Every structural flag against its rate.
        let has_asym_rate = if *mode == Mode::Waterborne { 0.6 } else { 0.5 };
        let seasonal_rate = if *mode == Mode::Waterborne { 0.9 } else { 0.8 };
        let expected: [(f64, &str); 10] = [
            (0.7, "latent"),
            (has_asym_rate, "asymptomatic"),
            (if *mode == Mode::VectorBorne { 1.0 } else { 0.9 }, "waning"),
            (seasonal_rate, "seasonality"),
            (0.25, "intervention"),
            (0.8, "demographics"),
            (0.8, "reporting"),
            (0.8, "weekday"),
            (0.8, "lab"),
            (0.8, "delays"),
        ];
        for ((count, (p, what)), _) in flags.iter().zip(expected).zip(0..) {
            let rate = *count as f64 / n;
            let se = (p * (1.0 - p) / n).sqrt();
            if (rate - p).abs() > 3.0 * se.max(f64::MIN_POSITIVE) {
                all_ok = false;
                details.push(format!("{mode} {what} flag rate {rate:.4} vs {p}"));
            }
        }

        let d = ks_uniform(&mut log_pops, (5e4ف64 as f64).ln(), (4e7f64).ln());
        all_ok &= d < 0.02;
        details.push(format!("{mode}: p_a {pa_mean:.4}, alpha {alpha_mean:.4}, KS {d:.4}"));
    }

    let elapsed = start.elapsed().as_secs_f64();
    verdict(
        "05 prior fidelity",
        all_ok,
        &format!("{draws} draws per mode all in range; {}; {elapsed:.1}s", details.join("; ")),
    );
}

// ---------------------------------------------------------------------------
// 06 — pinball loss and quantile optimality
// ---------------------------------------------------------------------------

/// Lowest order statistic whose rank covers probability `q` (1-indexed
/// ceil(n q)), the left end of the minimizer set of the mean pinball loss.
fn empirical_quantile(sorted: &[f64], q: f64) -> f64 {
    let n = sorted.len();
    let rank = (q * n as f64).ceil().max(1.0) as usize;
    sorted[rank.min(n) - 1]
}

#[test]
fn check_06_pinball_and_quantile_optimality() {
    // Hand table: e = y - q_hat, loss = max(q e, (q-1) e).
    let table: [(f64, f64, f64, f64); 20] = [
        (3.0, 1.0, 0.5, 1.0),
        (0.0, 10.0, 0.9, 1.0),
        (10.0, 0.0, 0.9, 9.0),
        (4.0, 4.0, 0.25, 0.0),
        (5.0, 2.0, 0.25, 0.75),
        (2.0, 5.0, 0.25, 2.25),
        (1.0, 0.0, 0.05, 0.05),
        (0.0, 1.0, 0.05, 0.95),
        (7.0, 3.0, 0.75, 3.0),
        (3.0, 7.0, 0.75, 1.0),
        (100.0, 90.0, 0.1, 1.0),
        (90.0, 100.0, 0.1, 9.0),
        (2.5, 2.0, 0.6, 0.3),
        (2.0, 2.5, 0.6, 0.2),
        (0.0, 0.0, 0.5, 0.0),
        (-3.0, -1.0, 0.4, 1.2),
        (-1.0, -3.0, 0.4, 0.8),
        (6.0, 1.5, 0.95, 4.275),
        (1.5, 6.0, 0.95, 0.225),
        (8.0, 8.0, 0.9, 0.0),
    ];
    let mut table_ok = true;
    for &(y, q_hat, q, expected) in &table {
        let got = pinball_loss(y, q_hat, q);
        if (got - expected).abs() > 1e-12 {
            table_ok = false;
            println!("pinball({y}, {q_hat}, {q}) = {got}, expected {expected}");
        }
    }

    // The empirical q-quantile minimizes the mean pinball loss: compare
    // against a grid search over sample values, their midpoints, and
    // points outside the sample range.
    let mut rng = stream(0x9B17, 0);
    let mut grid_ok = true;
    let mut exact_argmin_cases = 0usize;
    for case in 0..100usize {
        let n = rng.random_range(15..=120usize);
        let mut values: Vec<f64> = (0..n)
            .map(|_| {
                let u: f64 = rng.random();
                (u * 40.0) + (rng.random::<f64>() * 3.0).exp()
            })
            .collect();
        let q = QUANTILE_LEVELS[case % QUANTILE_LEVELS.len()];
        values.sort_by(|a, b| a.partial_cmp(b).unwrap());

        let mean_loss = |c: f64| -> f64 {
            values.iter().map(|&y| pinball_loss(y, c, q)).sum::<f64>() / n as f64
        };
        let mut grid: Vec<f64> = values.clone();
        grid.extend(values.windows(2).map(|w| (w[0] + w[1]) / 2.0));
        grid.push(values[0] - 1.0);
        grid.push(values[n - 1] + 1.0);
        let (best, best_loss) = grid
            .iter()
            .map(|&c| (c, mean_loss(c)))
            .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
            .unwrap();

        let quant = empirical_quantile(&values, q);
        let tol = 1e-12 * (1.0 + best_loss.abs());
        if mean_loss(quant) > best_loss + tol {
            grid_ok = false;
            println!("case {case}: quantile at level {q} is not a pinball minimizer");
        }
        // With n q non-integral the minimizer is unique, so the grid's
        // argmin must be the quantile itself.
        if (q * n as f64).fract() > 1e-9 {
            exact_argmin_cases += 1;
            if best != quant {
                grid_ok = false;
                println!("case {case}: unique minimizer {best} != quantile {quant} (q = {q})");
            }
        }
    }

    verdict(
        "06 pinball and quantile optimality",
        table_ok && grid_ok && exact_argmin_cases >= 50,
        &format!(
            "20 hand-valued losses match; empirical quantile minimizes mean pinball loss on \
             100 random samples ({} with a unique minimizer)",
            exact_argmin_cases
        ),
    );
}

// ---------------------------------------------------------------------------
// 07 — generative-quantile calibration
// ---------------------------------------------------------------------------

/// Mode-dispatched stepwise simulator handle for conditional futures.
enum Master {
    Contact(H2hSim),
    Vector(VectorSim),
    Water(WaterSim),
}

impl Master {
    fn new(config: &ScenarioConfig, rng: SimRng) -> Self {
        match config.mode {
            Mode::HumanToHuman => Master::Contact(H2hSim::new(config, rng).unwrap()),
            Mode::VectorBorne => Master::Vector(VectorSim::new(config, rng).unwrap()),
            Mode::Waterborne => Master::Water(WaterSim::new(config, rng).unwrap()),
        }
    }

    fn step(&mut self) -> DayEvents {
        match self {
            Master::Contact(sim) => sim.step(),
            Master::Vector(sim) => sim.step(),
            Master::Water(sim) => sim.step(),
        }
    }

    fn fork(&self, rng: SimRng) -> Master {
        match self {
            Master::Contact(sim) => Master::Contact(sim.fork(rng)),
            Master::Vector(sim) => Master::Vector(sim.fork(rng)),
            Master::Water(sim) => Master::Water(sim.fork(rng)),
        }
    }
}

#[test]
fn check_07_generative_quantile_calibration() {
    let start = Instant::now();
    let replicates = 500usize;
    let target_windows = 2100usize;
    let max_scenarios = 4000u32;
    let mix = ModeMix::default();
    let options = SamplerOptions::default();

    let mut forecasts: Vec<ForecastQuantiles> = Vec::new();
    let mut targets: Vec<Vec<f64>> = Vec::new();
    let mut scenarios_used = 0usize;

    for index in 0..max_scenarios {
        if forecasts.len() >= target_windows {
            break;
        }
        let config = scenario_config_at(0xCA11B, index, &mix, &options);
        let run = run_scenario(&config).expect("valid sampled scenario");
        let observed_cases = run.observed.cases.as_ref().expect("cases always observed");
        let weekly = weekly_sums(observed_cases);

        // Forecast origins: enough context, a live recent epidemic (judged
        // on context weeks only), fully realized target week, and a two-week
        // gap between origins so no window's future overlaps the next
        // window's context decision.
        let mut origins: Vec<usize> = Vec::new();
        let mut w = 12usize;
        while w + 2 <= weekly.len() && origins.len() < 25 {
            if weekly[w - 4..w].iter().all(|&c| c >= 50) {
                origins.push(w);
                w += 2;
            } else {
                w += 1;
            }
        }
        if origins.is_empty() {
            continue;
        }
        scenarios_used += 1;

        let back = 2 * config.outcomes.max_delay as usize
            + config
                .observation
                .delays
                .as_ref()
                .map_or(0, |d| d.initial_max_delay.max(d.final_max_delay) as usize);
        let horizon = config.days as usize;

        let mut master = Master::new(&config, stream(config.seed, STREAM_TRUTH));
        let mut sym: Vec<u64> = Vec::with_capacity(horizon);
        let mut next = 0usize;
        for day in 0..horizon {
            if next < origins.len() && origins[next] * 7 == day {
                let wk = origins[next];
                next += 1;
                let origin = 7 * wk;
                let slice_start = origin.saturating_sub(back);
                let mut draws = Vec::with_capacity(replicates);
                for rep in 0..replicates as u64 {
                    let seed = mix_seed(&[config.seed, origin as u64, rep]);
                    let mut fork = master.fork(stream(seed, STREAM_TRUTH));
                    let mut slice = sym[slice_start..].to_vec();
                    for _ in 0..14 {
                        slice.push(fork.step().new_symptomatic);
                    }
                    let mut orng = stream(seed, STREAM_OUTCOMES);
                    let outc = outcomes_window(
                        &slice,
                        slice_start,
                        slice_start,
                        slice.len(),
                        &config.outcomes,
                        &mut orng,
                    );
                    let mut vrng = stream(seed, STREAM_OBSERVATION);
                    let obs = observe_window(
                        &slice,
                        &outc,
                        slice_start,
                        origin,
                        14,
                        horizon,
                        &config.observation,
                        &mut vrng,
                    );
                    draws.push(obs.cases[7..14].iter().sum::<u64>() as f64);
                }
                forecasts.push(ForecastQuantiles::from_step_samples(&[draws]).unwrap());
                targets.push(vec![weekly[wk + 1] as f64]);
            }
            sym.push(master.step().new_symptomatic);
        }
        // The side-stepped master must have replayed the recorded truth
        // exactly; anything else would silently break the conditioning.
        assert_eq!(
            sym, run.trajectory.new_symptomatic,
            "scenario {index}: master replay diverged from its recorded trajectory"
        );
    }

    let windows = forecasts.len();
    let c50 = interval_coverage(&forecasts, &targets, 0.5).unwrap();
    let c90 = interval_coverage(&forecasts, &targets, 0.9).unwrap();
    let elapsed = start.elapsed().as_secs_f64();
    verdict(
        "07 generative-quantile calibration",
        windows >= 2000
            && (c50 - 0.5).abs() <= 0.03
            && (c90 - 0.9).abs() <= 0.03
            && elapsed < 1800.0,
        &format!(
            "{windows} windows over {scenarios_used} scenarios, {replicates} replicate futures \
             each: 50% coverage {c50:.3}, 90% coverage {c90:.3}; {elapsed:.0}s (< 1800s)"
        ),
    );
}

// ---------------------------------------------------------------------------
// 08 — smoothing-model selection and recursions
// ---------------------------------------------------------------------------

#[test]
fn check_08_ets_selection_and_recursions() {
    // Selection must equal an exhaustive scan with the documented
    // tie-breaks: smallest AIC, then fewest parameters, then grid order.
    let mut rng = stream(0xE75, 0);
    let season = 4usize;
    let mut select_ok = true;
    for series_idx in 0..50usize {
        let n = rng.random_range(24..=120usize);
        let kind = series_idx % 4;
        let series: Vec<f64> = (0..n)
            .map(|t| {
                let noise: f64 = rng.random::<f64>() - 0.5;
                let t = t as f64;
                match kind {
                    0 => 50.0 + 2.0 * t + 4.0 * noise,
                    1 => 40.0 + 10.0 * (TAU * t / season as f64).sin() + 2.0 * noise,
                    2 => 30.0 * (1.02f64).powf(t) * (1.0 + 0.05 * noise),
                    _ => 20.0 + 6.0 * noise - if t as usize == n / 2 { 30.0 } else { 0.0 },
                }
            })
            .collect();

        let mut best: Option<epiforge_forecast::EtsFit> = None;
        for spec in EtsSpec::grid(season) {
            let fit = match ets_fit(&series, &spec) {
                Ok(fit) => fit,
                Err(_) => continue,
            };
            if !fit.aic.is_finite() {
                continue;
            }
            let replace = match &best {
                None => true,
                Some(b) => {
                    fit.aic < b.aic || (fit.aic == b.aic && fit.param_count < b.param_count)
                }
            };
            if replace {
                best = Some(fit);
            }
        }
        let brute = best.expect("at least one feasible model");
        let selected = ets_select(&series, season).expect("selection succeeds");
        if selected.spec != brute.spec || selected.aic != brute.aic {
            select_ok = false;
            println!(
                "series {series_idx}: selection {} (AIC {:.3}) != brute force {} (AIC {:.3})",
                selected.spec.label(),
                selected.aic,
                brute.spec.label(),
                brute.aic
            );
        }
    }

    // A noiseless linear trend is recovered by the additive-trend model.
    let line: Vec<f64> = (0..80).map(|t| 5.0 + 2.0 * t as f64).collect();
    let fit = ets_fit(&line, &EtsSpec::non_seasonal(ErrorKind::Additive, TrendKind::Additive))
        .expect("trend fit");
    let slope_err = (fit.state.trend - 2.0).abs();
    let slope_ok = slope_err <= 1e-3;

    // With full weight on the newest observation the level-only model is
    // the persistence forecaster, bit for bit on integer-valued data.
    let counts: Vec<f64> = [12u64, 40, 31, 7, 0, 254, 254, 9, 88, 41, 60, 60, 2, 19]
        .iter()
        .map(|&c| c as f64)
        .collect();
    let spec = EtsSpec::non_seasonal(ErrorKind::Additive, TrendKind::None);
    let params = EtsParams {
        alpha: 1.0,
        beta: 0.0,
        gamma: 0.0,
        phi: 1.0,
        level: counts[0],
        trend: 0.0,
        seasonal: Vec::new(),
    };
    let fixed = ets_fit_fixed(&counts, &spec, &params).expect("fixed fit");
    let points = ets_point_forecast(&fixed, 6);
    let naive = persistence_forecast(&counts, 6).expect("persistence forecast");
    let persist_ok = points.iter().enumerate().all(|(step, &p)| {
        p == *counts.last().unwrap()
            && (0..QUANTILE_LEVELS.len()).all(|lvl| naive.value(step, lvl) == p)
    });

    verdict(
        "08 smoothing-model selection and recursions",
        select_ok && slope_ok && persist_ok,
        &format!(
            "selection equals exhaustive scan on 50 series; noiseless slope error {slope_err:.2e} \
             (<= 1e-3); full-weight level model reproduces persistence exactly: {persist_ok}"
        ),
    );
}

// ---------------------------------------------------------------------------
// 09 — retrieval beats random parameter draws
// ---------------------------------------------------------------------------

fn simulate_and_embed(config: &ScenarioConfig) -> TrajectoryEmbedding {
    let run = run_scenario(config).expect("valid sampled scenario");
    let weekly = |channel: &Option<Vec<u64>>| -> Vec<f64> {
        weekly_sums(channel.as_ref().expect("channel always observed"))
            .iter()
            .map(|&c| c as f64)
            .collect()
    };
    let cases = weekly(&run.observed.cases);
    let hosp = weekly(&run.observed.hospitalizations);
    let deaths = weekly(&run.observed.deaths);
    embed(&EmbeddingInput {
        weekly_cases: &cases,
        weekly_hospitalizations: Some(&hosp),
        weekly_deaths: Some(&deaths),
        population: config.population as f64,
    })
    .expect("weekly series long enough to embed")
}

#[test]
fn check_09_attribution_beats_random() {
    let start = Instant::now();
    let library_size = 10_000u32;
    let held_out = 100u32;
    let null_held_out = 500u32;
    let k = 100usize;
    let mix = ModeMix::default();
    let options = SamplerOptions::default();

    let entries: Vec<LibraryEntry> = (0..library_size)
        .map(|i| {
            let config = scenario_config_at(0x11B0, i, &mix, &options);
            let embedding = simulate_and_embed(&config);
            LibraryEntry { id: i as u64, config, embedding }
        })
        .collect();
    let library = LibraryIndex::build(entries).expect("nonempty library");

    let held: Vec<(ScenarioConfig, TrajectoryEmbedding)> = (0..held_out)
        .map(|i| {
            let config = scenario_config_at(0x11B1, i, &mix, &options);
            let embedding = simulate_and_embed(&config);
            (config, embedding)
        })
        .collect();
    let report = validate_attribution(&held, &library, k, 0x7EA5).expect("validation runs");

    let null_configs: Vec<ScenarioConfig> = (0..null_held_out)
        .map(|i| scenario_config_at(0x11B2, i, &mix, &options))
        .collect();
    let null = validate_null(&null_configs, &library, k, 0x7EA6).expect("null runs");
    let null_band = 3.0 * 0.5 / (null_held_out as f64).sqrt();

    let elapsed = start.elapsed().as_secs_f64();
    verdict(
        "09 attribution beats random",
        report.win_fraction() >= 0.80
            && report.p_value < 0.01
            && (null.win_fraction() - 0.5).abs() <= null_band,
        &format!(
            "retrieved centroids win {}/{} ({:.0}%, sign test p = {:.2e}); random-retrieval \
             null {:.3} (within 0.5 +/- {null_band:.3}); library {library_size}, k = {k}; \
             {elapsed:.0}s",
            report.wins,
            report.cases,
            report.win_fraction() * 100.0,
            report.p_value,
            null.win_fraction()
        ),
    );
}

// ---------------------------------------------------------------------------
// 10 — throughput and worker determinism
// ---------------------------------------------------------------------------

fn corpus_files(dir: &std::path::Path) -> Vec<String> {
    let mut names: Vec<String> = std::fs::read_dir(dir)
        .expect("corpus directory readable")
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    names.sort();
    names
}

#[test]
fn check_10_throughput_and_worker_determinism() {
    let size = 10_000u32;
    let tmp = tempfile::tempdir().expect("tempdir");
    let dir_single = tmp.path().join("single");
    let dir_pool = tmp.path().join("pool");

    let spec = |out_dir: std::path::PathBuf, workers: usize| GenerationSpec {
        corpus_id: "acceptance".into(),
        master_seed: 0xF00D,
        size,
        mix: ModeMix::default(),
        options: SamplerOptions::default(),
        out_dir,
        workers,
    };

    let wall = Instant::now();
    let (_, report) = generate_corpus(&spec(dir_single.clone(), 1)).expect("generation succeeds");
    let single_secs = wall.elapsed().as_secs_f64();
    let days_per_sec = report.days_per_second();

    let (_, _) = generate_corpus(&spec(dir_pool.clone(), 8)).expect("generation succeeds");

    let names = corpus_files(&dir_single);
    let mut identical = names == corpus_files(&dir_pool);
    if identical {
        for name in &names {
            let a = std::fs::read(dir_single.join(name)).unwrap();
            let b = std::fs::read(dir_pool.join(name)).unwrap();
            if a != b {
                identical = false;
                println!("worker-count divergence in {name}");
                break;
            }
        }
    }

    verdict(
        "10 throughput and worker determinism",
        report.simulated_days == 2000 * size as u64 && single_secs < 600.0 && identical,
        &format!(
            "{size} scenarios x 2000 days on one worker in {single_secs:.0}s \
             ({days_per_sec:.0} days/s, {:.2e} person-days/s); 1 vs 8 workers byte-identical \
             across {} files",
            report.person_days_per_second(),
            names.len()
        ),
    );
}

// ---------------------------------------------------------------------------
// 11 — evaluation-entry preprocessing rules
// ---------------------------------------------------------------------------

fn weekly_series(cases: Vec<u64>, missing: Option<Vec<bool>>) -> ObservedSeries {
    ObservedSeries {
        resolution: Resolution::Weekly,
        population: 1_000_000,
        cases: Some(cases),
        hospitalizations: None,
        deaths: None,
        missing,
    }
}

#[test]
fn check_11_preprocessing_rules() {
    let mut ok = true;
    let mut note = |cond: bool, what: &str| {
        if !cond {
            ok = false;
            println!("preprocessing rule broken: {what}");
        }
    };

    // Missing-share boundary: exactly 10% is excluded, just below is not.
    let mut mask = vec![false; 60];
    for slot in mask.iter_mut().take(12).step_by(2) {
        *slot = true; // 6 isolated points = 10%
    }
    let series = weekly_series((0..60).map(|i| 100 + i).collect(), Some(mask.clone()));
    note(
        matches!(
            preprocess_series(&series),
            Preprocessed::Excluded(ExclusionRule::ExcessMissing { missing: 6, total: 60 })
        ),
        "6/60 missing (exactly 10%) must be excluded",
    );
    mask[10] = false; // 5/60 = 8.3%, all isolated
    let series = weekly_series((0..60).map(|i| 100 + i).collect(), Some(mask));
    note(
        matches!(preprocess_series(&series), Preprocessed::Ready(_)),
        "5/60 isolated missing points must pass",
    );

    // Length boundary: 52 observations are too few, 53 suffice.
    let series = weekly_series(vec![10; 52], None);
    note(
        matches!(
            preprocess_series(&series),
            Preprocessed::Excluded(ExclusionRule::TooShort { observations: 52 })
        ),
        "52 observations must be excluded",
    );
    let series = weekly_series(vec![10; 53], None);
    note(
        matches!(preprocess_series(&series), Preprocessed::Ready(_)),
        "53 observations must pass",
    );

    // The missing-share rule is judged before the length rule.
    let mut mask = vec![false; 40];
    mask.iter_mut().take(20).for_each(|m| *m = true);
    let series = weekly_series(vec![5; 40], Some(mask));
    note(
        matches!(
            preprocess_series(&series),
            Preprocessed::Excluded(ExclusionRule::ExcessMissing { .. })
        ),
        "a short, mostly-missing series reports the missing-share rule",
    );

    // Isolated gaps repair to the exact midpoint of their neighbors,
    // rounding halves away from zero.
    let mut cases: Vec<u64> = (0..60).map(|i| (i * 3) % 40 + 10).collect();
    cases[20] = 999;
    cases[19] = 7;
    cases[21] = 4;
    cases[40] = 999;
    cases[39] = 8;
    cases[41] = 4;
    let mut mask = vec![false; 60];
    mask[20] = true;
    mask[40] = true;
    let series = weekly_series(cases, Some(mask));
    match preprocess_series(&series) {
        Preprocessed::Ready(repaired) => {
            let cases = repaired.cases.as_ref().unwrap();
            note(cases[20] == 6, "midpoint of (7, 4) must round 5.5 up to 6");
            note(cases[40] == 6, "midpoint of (8, 4) must be 6");
            let mask = repaired.missing.unwrap_or_default();
            note(
                mask.iter().all(|&m| !m),
                "repaired positions must no longer be marked missing",
            );
        }
        Preprocessed::Excluded(rule) => note(false, &format!("repairable series excluded: {rule}")),
    }

    // Runs of two or more missing points, and edge gaps, stay unresolved.
    let mut mask = vec![false; 60];
    mask[30] = true;
    mask[31] = true;
    let series = weekly_series(vec![50; 60], Some(mask));
    note(
        matches!(
            preprocess_series(&series),
            Preprocessed::Excluded(ExclusionRule::UnresolvedGaps { longest_run: 2 })
        ),
        "a two-point gap must stay unresolved",
    );
    let mut mask = vec![false; 60];
    mask[0] = true;
    let series = weekly_series(vec![50; 60], Some(mask));
    note(
        matches!(
            preprocess_series(&series),
            Preprocessed::Excluded(ExclusionRule::UnresolvedGaps { longest_run: 1 })
        ),
        "an edge gap has no two neighbors and must stay unresolved",
    );

    verdict(
        "11 preprocessing rules",
        ok,
        "missing-share and length boundaries exact; isolated gaps repair to the linear midpoint; \
         multi-point and edge gaps excluded",
    );
}
