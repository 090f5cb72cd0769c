use std::fmt::Write as _;
use std::path::Path;

use serde_json::{json, Value};
use thiserror::Error;
use totient_core::classify::{
    bound_2p, classify_twice_prime, is_sophie_germain, preimage_2p_exact, sp_generate,
};
use totient_core::multiplicity::{
    build_sieve_with_budget, carmichael_scan, ford_search, multiplicity, parity_balance_suite,
    required_sieve_limit, TotientSieve,
};
use totient_core::power_two::{
    gupta_bound_power_two, odd_count_of_power_two, odd_preimage_of_power_two, FermatStatusTable,
};
use totient_core::preimage::{gupta_bound, odd_member_bound, preimage, gupta_table};
use totient_core::totient::phi;
use totient_core::Error;

use crate::output::CsvTable;
use crate::Command;

#[derive(Debug, Error)]
pub enum Failure {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Domain(Error),
    #[error("{0}")]
    Resource(Error),
    #[error("{0}")]
    Io(String),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Domain(_) => 3,
            Failure::Resource(_) | Failure::Io(_) => 4,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_domain() {
            Failure::Domain(e)
        } else {
            Failure::Resource(e)
        }
    }
}

pub struct Report {
    pub command: String,
    pub inputs: Value,
    pub result: Value,
    pub text: String,
    pub csv: Option<CsvTable>,
}

fn set(items: &[u64]) -> String {
    let inner: Vec<String> = items.iter().map(u64::to_string).collect();
    format!("{{{}}}", inner.join(", "))
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("library types serialize")
}

pub fn execute(command: &Command, table: &FermatStatusTable, budget: u64) -> Result<Report, Failure> {
    match command {
        Command::Phi { n } => cmd_phi(*n),
        Command::Bound { m } => cmd_bound(*m),
        Command::Preimage { m } => cmd_preimage(*m),
        Command::Table2 => cmd_table2(),
        Command::Classify { p } => cmd_classify(*p),
        Command::Sp { p, count } => cmd_sp(*p, *count),
        Command::Pow2 { k } => cmd_pow2(*k, table),
        Command::Sieve { limit, save } => cmd_sieve(*limit, save.as_deref(), budget),
        Command::Carmichael { bound, sieve } => cmd_carmichael(*bound, sieve.as_deref(), budget),
        Command::Ford { k, bound, sieve } => cmd_ford(*k, *bound, sieve.as_deref(), budget),
        Command::Parity { s_max, sieve } => cmd_parity(*s_max, sieve.as_deref(), budget),
    }
}

fn cmd_phi(n: u64) -> Result<Report, Failure> {
    let v = phi(n)?;
    Ok(Report {
        command: "phi".into(),
        inputs: json!({ "n": n }),
        result: json!({ "n": n, "phi": v }),
        text: format!("φ({n}) = {v}\n"),
        csv: None,
    })
}

fn cmd_bound(m: u64) -> Result<Report, Failure> {
    let b = gupta_bound(m)?;
    let primes: Vec<String> = b.contributing_primes.iter().map(u64::to_string).collect();
    Ok(Report {
        command: "bound".into(),
        inputs: json!({ "m": m }),
        text: format!(
            "A({m}) = {}\nfloor: {}\nprimes p with (p-1) | {m}: {}\n",
            b.value,
            b.floor,
            primes.join(", ")
        ),
        result: to_value(&b),
        csv: None,
    })
}

fn cmd_preimage(m: u64) -> Result<Report, Failure> {
    let set_ = preimage(m)?;
    let bound = match gupta_bound(m) {
        Ok(b) => Some(b),
        Err(Error::OddArgument(_)) => None,
        Err(e) => return Err(e.into()),
    };
    let odd_bound = bound.as_ref().map(|_| odd_member_bound(m)).transpose()?;

    let mut text = format!("φ⁻¹({m}) = {}\n", set(&set_.members));
    let (odd, even) = set_.parity_counts();
    let _ = writeln!(text, "odd  ({odd}): {}", set(&set_.odd_members));
    let _ = writeln!(text, "even ({even}): {}", set(&set_.even_members));
    match &bound {
        Some(b) => {
            let _ = writeln!(text, "A({m}) = {}", b.value);
        }
        None => text.push_str("A(m) is undefined for odd m > 1\n"),
    }

    let (a_num, a_den) = bound
        .as_ref()
        .map(|b| (b.value.num().to_string(), b.value.den().to_string()))
        .unwrap_or_default();
    let rows = set_
        .members
        .iter()
        .map(|n| {
            vec![
                m.to_string(),
                a_num.clone(),
                a_den.clone(),
                n.to_string(),
                if n % 2 == 1 { "odd" } else { "even" }.to_string(),
            ]
        })
        .collect();

    Ok(Report {
        command: "preimage".into(),
        inputs: json!({ "m": m }),
        result: json!({
            "preimage": to_value(&set_),
            "bound": bound.map(|b| to_value(&b)),
            "odd_member_bound": odd_bound.map(|r| r.to_string()),
        }),
        text,
        csv: Some(CsvTable {
            header: vec!["m", "A_num", "A_den", "n", "parity"],
            rows,
        }),
    })
}

fn cmd_table2() -> Result<Report, Failure> {
    let rows = gupta_table()?;
    let cell = |v: Option<u64>| v.map_or("−".to_string(), |x| x.to_string());
    let mut text = format!("{:>4}  {:>8}  {:>9}\n", "m", "A(m)", "φ(A(m))");
    for r in &rows {
        let _ = writeln!(text, "{:>4}  {:>8}  {:>9}", r.m, r.a.to_string(), cell(r.phi_of_a));
    }
    Ok(Report {
        command: "table2".into(),
        inputs: json!({}),
        result: json!({ "rows": to_value(&rows) }),
        text,
        csv: Some(CsvTable {
            header: vec!["m", "A", "phi_of_A"],
            rows: rows
                .iter()
                .map(|r| vec![r.m.to_string(), r.a.to_string(), cell(r.phi_of_a)])
                .collect(),
        }),
    })
}

fn cmd_classify(p: u64) -> Result<Report, Failure> {
    let verdict = classify_twice_prime(p)?;
    let twice = 2 * p;
    let mut text = if verdict.in_image {
        format!(
            "{twice} = 2·{p} is a totient: φ({w}) = {twice}, {w} is a safe prime\n",
            w = 2 * p + 1
        )
    } else {
        format!("{twice} = 2·{p} is not a totient: {} is composite\n", 2 * p + 1)
    };

    let sg = is_sophie_germain(p);
    let bound = if sg && p != 2 { Some(bound_2p(p)?) } else { None };
    let pair = if sg && p >= 5 { Some(preimage_2p_exact(p)?) } else { None };
    if let Some((a, phi_a)) = bound {
        let _ = writeln!(text, "A({twice}) = {a}, φ({a}) = {phi_a}");
    }
    if let Some(pair) = &pair {
        let _ = writeln!(text, "φ⁻¹({twice}) = {}", set(&pair.members));
    }

    Ok(Report {
        command: "classify".into(),
        inputs: json!({ "p": p }),
        result: json!({
            "verdict": to_value(&verdict),
            "sophie_germain": sg,
            "bound": bound.map(|(a, phi_a)| json!({ "a": a, "phi_of_a": phi_a })),
            "preimage": pair.map(|s| to_value(&s)),
        }),
        text,
        csv: None,
    })
}

fn cmd_sp(p: u64, count: usize) -> Result<Report, Failure> {
    let members = sp_generate(p, count)?;
    let mut text = format!("S({p}): primes q = {}/2 + k·{p} with 2q + 1 = {p}(1 + 2k)\n", p - 1);
    let _ = writeln!(text, "{:>6}  {:>10}  {:>12}", "k", "q", "2q");
    for s in &members {
        let _ = writeln!(text, "{:>6}  {:>10}  {:>12}", s.k, s.q, s.nontotient());
    }
    let rows = members
        .iter()
        .map(|s| {
            vec![
                s.p.to_string(),
                s.k.to_string(),
                s.q.to_string(),
                s.nontotient().to_string(),
            ]
        })
        .collect();
    Ok(Report {
        command: "sp".into(),
        inputs: json!({ "p": p, "count": count }),
        result: json!({ "p": p, "members": to_value(&members) }),
        text,
        csv: Some(CsvTable {
            header: vec!["p", "k", "q", "nontotient"],
            rows,
        }),
    })
}

fn cmd_pow2(k: u32, table: &FermatStatusTable) -> Result<Report, Failure> {
    let odd = odd_preimage_of_power_two(k, table)?;
    let count = odd_count_of_power_two(k, table)?;
    let bound = match gupta_bound_power_two(k, table) {
        Ok(r) => Some(r),
        Err(Error::UndeterminedFermat(_)) => None,
        Err(e) => return Err(e.into()),
    };

    let bits: Vec<String> = (0..32).filter(|i| k >> i & 1 == 1).map(|i| format!("F_{i}")).collect();
    let mut text = match (odd.witness, odd.blocking_index) {
        (Some(w), _) => format!("odd solution of φ(n) = 2^{k}: n = {w} = {}\n", if bits.is_empty() { "1".to_string() } else { bits.join("·") }),
        (None, Some(i)) => format!("no odd solution of φ(n) = 2^{k}: F_{i} is composite\n"),
        (None, None) => format!("odd solution of φ(n) = 2^{k} is undetermined: a needed Fermat number has unknown status\n"),
    };
    match &bound {
        Some(b) => {
            let _ = writeln!(text, "A(2^{k}) = {b}");
        }
        None => text.push_str("A(2^k) is undetermined\n"),
    }

    Ok(Report {
        command: "pow2".into(),
        inputs: json!({ "k": k }),
        result: json!({
            "odd_preimage": to_value(&odd),
            "odd_count": to_value(&count),
            "bound": bound.map(|b| b.to_string()),
        }),
        text,
        csv: None,
    })
}

fn cmd_sieve(limit: u64, save: Option<&Path>, budget: u64) -> Result<Report, Failure> {
    let sieve = build_sieve_with_budget(limit, budget)?;
    if let Some(path) = save {
        sieve.save(path)?;
    }
    let last = sieve.get(limit).expect("limit is in range");
    let mut text = format!("sieve of φ(1..={limit}) built; φ({limit}) = {last}\n");
    if let Some(path) = save {
        let _ = writeln!(text, "saved to {}", path.display());
    }
    Ok(Report {
        command: "sieve".into(),
        inputs: json!({ "limit": limit, "save": save.map(|p| p.display().to_string()) }),
        result: json!({ "limit": limit, "phi_of_limit": last, "saved": save.is_some() }),
        text,
        csv: None,
    })
}

/// Loads the given dump, or builds a sieve of exactly `required` entries.
fn obtain_sieve(required: u64, path: Option<&Path>, budget: u64) -> Result<TotientSieve, Failure> {
    match path {
        Some(p) => Ok(TotientSieve::load(p, budget)?),
        None => Ok(build_sieve_with_budget(required, budget)?),
    }
}

fn cmd_carmichael(bound: u64, path: Option<&Path>, budget: u64) -> Result<Report, Failure> {
    let required = required_sieve_limit(bound)?;
    let sieve = obtain_sieve(required, path, budget)?;
    let singles = carmichael_scan(bound, &sieve)?;
    let text = if singles.is_empty() {
        format!(
            "no m ≤ {bound} has exactly one preimage (sieve limit {}, required {required})\n",
            sieve.limit()
        )
    } else {
        format!("m ≤ {bound} with exactly one preimage: {}\n", set(&singles))
    };
    Ok(Report {
        command: "carmichael".into(),
        inputs: json!({ "bound": bound, "sieve": path.map(|p| p.display().to_string()) }),
        result: json!({
            "bound": bound,
            "required_limit": required,
            "sieve_limit": sieve.limit(),
            "singletons": singles,
        }),
        text,
        csv: None,
    })
}

fn cmd_ford(k: u64, bound: u64, path: Option<&Path>, budget: u64) -> Result<Report, Failure> {
    let required = required_sieve_limit(bound)?;
    let sieve = obtain_sieve(required, path, budget)?;
    let found = ford_search(k, bound, &sieve)?;
    let members = found
        .map(|m| multiplicity(m, &sieve).map(|r| r.members))
        .transpose()?;
    let text = match (found, &members) {
        (Some(m), Some(ms)) => format!("{m}\nφ⁻¹({m}) = {}\n", set(ms)),
        _ => format!("no m ≤ {bound} has exactly {k} preimages\n"),
    };
    Ok(Report {
        command: "ford".into(),
        inputs: json!({ "k": k, "bound": bound, "sieve": path.map(|p| p.display().to_string()) }),
        result: json!({
            "k": k,
            "bound": bound,
            "m": found,
            "members": members,
            "required_limit": required,
            "sieve_limit": sieve.limit(),
        }),
        text,
        csv: None,
    })
}

fn cmd_parity(s_max: u64, path: Option<&Path>, budget: u64) -> Result<Report, Failure> {
    let required = (3..=s_max)
        .step_by(2)
        .map(|s| gupta_bound(2 * s).map(|b| b.floor))
        .try_fold(1u64, |acc, b| b.map(|b| acc.max(b)))?;
    let sieve = obtain_sieve(required, path, budget)?;
    let violations = parity_balance_suite(s_max, &sieve)?;
    let text = if violations.is_empty() {
        format!("O(2s) = E(2s) for every odd s in 3..={s_max}\n")
    } else {
        let mut t = String::from("violations (s, odd, even):\n");
        for v in &violations {
            let _ = writeln!(t, "{} {} {}", v.s, v.odd, v.even);
        }
        t
    };
    Ok(Report {
        command: "parity".into(),
        inputs: json!({ "s_max": s_max, "sieve": path.map(|p| p.display().to_string()) }),
        result: json!({ "s_max": s_max, "violations": to_value(&violations) }),
        text,
        csv: None,
    })
}
