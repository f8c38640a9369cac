use std::io::Write;
use std::process::Command;

use farey_odd::cli::run;

fn farey(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let code = run(std::iter::once("farey").chain(args.iter().copied()), &mut out);
    (code, String::from_utf8(out).unwrap())
}

fn ok(args: &[&str]) -> String {
    let (code, out) = farey(args);
    assert_eq!(code, 0, "farey {args:?} → {out}");
    out
}

fn config(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_farey"));
    c.env_remove("FAREY_MAX_Q").env_remove("FAREY_FORMAT").env_remove("FAREY_JOBS");
    c
}

#[test]
fn list_orders() {
    assert_eq!(ok(&["list", "--q", "1"]), "1/1\n");
    let all = ok(&["list", "--q", "8"]);
    assert_eq!(all.lines().count(), 22);
    assert!(all.starts_with("1/8\n1/7\n"));
    let odd = ok(&["list", "--q", "8", "--odd"]);
    assert_eq!(odd.lines().collect::<Vec<_>>().join(" "), "1/7 1/5 2/7 1/3 2/5 3/7 4/7 3/5 2/3 5/7 4/5 6/7 1/1");
    let json: Vec<String> = serde_json::from_str(&ok(&["list", "--q", "3", "--format", "json"])).unwrap();
    assert_eq!(json, ["1/3", "1/2", "2/3", "1/1"]);
}

#[test]
fn rho_exact_and_enclosed() {
    let out = ok(&["rho", "--delta", "2", "--tol", "1e-9"]);
    assert!(out.contains("= 1/6 (0.166666666667) exact"), "{out}");
    let v: serde_json::Value = serde_json::from_str(&ok(&["rho", "--delta", "1,1", "--format", "json"])).unwrap();
    assert_eq!(v["exact"], false);
    assert_eq!(v["converged"], true);
    assert!(v["width"].as_f64().unwrap() <= 1e-6);
    assert_eq!(v["lo"].as_str().unwrap().split('/').count(), 2);
}

#[test]
fn stats_csv_is_quoted() {
    let out = ok(&["stats", "--q", "8", "--format", "csv"]);
    let mut rdr = csv::Reader::from_reader(out.as_bytes());
    assert_eq!(
        rdr.headers().unwrap().iter().collect::<Vec<_>>(),
        ["Q", "h", "delta", "count", "total", "ratio", "decimal"]
    );
    let rows: Vec<csv::StringRecord> = rdr.records().map(|r| r.unwrap()).collect();
    let seven = rows.iter().find(|r| &r[2] == "(7)").unwrap();
    assert_eq!((&seven[3], &seven[4], &seven[5], &seven[6]), ("1", "12", "1/12", "0.083333333333"));
    let pairs = ok(&["stats", "--q", "30", "--h", "2", "--max-delta", "2", "--format", "csv"]);
    assert!(pairs.contains("\"(1,1)\""), "{pairs}");
    let one = ok(&["stats", "--q", "30", "--delta", "1,2", "--format", "csv"]);
    assert_eq!(one.lines().count(), 2);
}

#[test]
fn stats_interval_and_cyclic() {
    let v: serde_json::Value =
        serde_json::from_str(&ok(&["stats", "--q", "8", "--delta", "1", "--interval", "0,1", "--format", "json"])).unwrap();
    assert_eq!(v[0]["ratio"], "7/12");
    let cyc: serde_json::Value =
        serde_json::from_str(&ok(&["stats", "--q", "8", "--delta", "1", "--cyclic", "--format", "json"])).unwrap();
    assert_eq!(cyc[0]["total"], 13);
}

#[test]
fn verify_suites() {
    let out = ok(&["verify", "prop2.1", "--q", "100", "--delta", "2,3"]);
    assert!(out.trim_end().ends_with("PASS"), "{out}");
    for suite in ["prop4.1", "lemma3.6", "areas", "stabilization", "completeness"] {
        let out = ok(&["verify", suite, "--q", "30", "--up-to", "20"]);
        assert!(out.trim_end().ends_with("PASS"), "{suite}: {out}");
    }
    for alias in ["identity", "interval-identity", "parity-swap"] {
        assert!(ok(&["verify", alias, "--q", "20", "--delta", "2"]).trim_end().ends_with("PASS"), "{alias}");
    }
    let v: serde_json::Value =
        serde_json::from_str(&ok(&["verify", "prop2.1", "--q", "8", "--delta", "7", "--format", "json"])).unwrap();
    assert_eq!(v["pass"], true);
    assert_eq!(v["checks"][0]["detail"], "streaming 1 lattice 1");
}

#[test]
fn geometry_commands() {
    let dump: serde_json::Value = serde_json::from_str(&ok(&["region", "--ks", "2", "--format", "json"])).unwrap();
    assert_eq!(dump["area"], "1/6");
    assert_eq!(dump["vertices"][0], serde_json::json!(["1/3", "2/3"]));
    let img: serde_json::Value =
        serde_json::from_str(&ok(&["region", "--ks", "7", "--image", "7", "--format", "json"])).unwrap();
    assert_eq!(img["area"], "1/126");
    let quad = ok(&["region", "--quadrangle", "6,1,1", "--format", "csv"]);
    assert_eq!(quad.lines().count(), 5);
    let (code, _) = farey(&["region", "--quadrangle", "5,1,1"]);
    assert_eq!(code, 2);
    let paths = ok(&["paths", "--delta", "1,1"]);
    assert_eq!(paths.lines().count(), 4);
    assert!(paths.contains("O —1— E —k:even— O —1— E —*— O"));
    let lat = ok(&["lattice", "--ks", "2", "--q", "100", "--parity", "odd,even", "--format", "csv"]);
    assert!(lat.lines().nth(1).unwrap().starts_with("T_(2),100,\"odd,even\",true,,"), "{lat}");
}

#[test]
fn comparisons() {
    let out = ok(&["compare", "--delta", "1,1", "--q", "500"]);
    assert!(out.contains("deviation*Q/log^2(Q)"), "{out}");
    let v: serde_json::Value = serde_json::from_str(&ok(&[
        "short-interval", "--delta", "2", "--q", "300", "--interval", "[1/4,3/4]", "--format", "json",
    ]))
    .unwrap();
    assert_eq!(v["interval"], "[1/4, 3/4]");
    assert!(v["deviation"].as_f64().unwrap() < 0.05);
    let table = ok(&["rho-table", "--h", "2", "--delta-max", "3", "--format", "csv"]);
    assert_eq!(table.lines().count(), 10);
    assert!(table.contains("\"(2,2)\",1/14,1/14,0.071428571429,16,true"), "{table}");
}

#[test]
fn output_is_deterministic() {
    let args = ["rho-table", "--h", "2", "--delta-max", "2", "--jobs", "3", "--format", "json"];
    assert_eq!(ok(&args), ok(&args));
}

#[test]
fn bad_input_exits_with_two() {
    for args in [
        &["list"][..],
        &["list", "--q", "0"],
        &["rho", "--delta", "0"],
        &["rho", "--delta", "2", "--tol", "-1"],
        &["stats", "--q", "8", "--interval", "1/2,1/4"],
        &["verify", "nonsense"],
        &["lattice", "--ks", "0", "--q", "4"],
    ] {
        assert_eq!(farey(args).0, 2, "{args:?}");
    }
}

#[test]
fn config_file_supplies_defaults() {
    let f = config("max_q = 10\nformat = \"csv\"\n");
    let path = f.path().to_str().unwrap();
    assert_eq!(farey(&["list", "--q", "11", "--config", path]).0, 2);
    let out = ok(&["list", "--q", "10", "--config", path]);
    assert!(out.starts_with("index,num,den\n"));
    // Flags beat the file.
    assert!(ok(&["list", "--q", "11", "--max-q", "11", "--format", "text", "--config", path]).starts_with("1/11\n"));
    let tol = config("tol = \"1/100\"\n");
    let v: serde_json::Value =
        serde_json::from_str(&ok(&["rho", "--delta", "1,1", "--format", "json", "--config", tol.path().to_str().unwrap()]))
            .unwrap();
    assert!(v["width"].as_f64().unwrap() <= 0.01);
    assert!(v["k_used"].as_u64().unwrap() <= 64, "{v}");
    let bad = config("max_qq = 3\n");
    assert_eq!(farey(&["list", "--q", "3", "--config", bad.path().to_str().unwrap()]).0, 2);
}

#[test]
fn environment_sits_between_flags_and_file() {
    let f = config("max_q = 100\n");
    let run = |env: Option<&str>, extra: &[&str]| {
        let mut c = bin();
        if let Some(v) = env {
            c.env("FAREY_MAX_Q", v);
        }
        c.args(["list", "--q", "50", "--config", f.path().to_str().unwrap()]).args(extra);
        c.output().unwrap()
    };
    assert!(run(None, &[]).status.success());
    let capped = run(Some("40"), &[]);
    assert_eq!(capped.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&capped.stderr).contains("exceeds the configured cap 40"));
    assert!(run(Some("40"), &["--max-q", "60"]).status.success());
    let fmt = bin().env("FAREY_FORMAT", "json").args(["list", "--q", "2"]).output().unwrap();
    assert_eq!(String::from_utf8(fmt.stdout).unwrap().split_whitespace().collect::<String>(), "[\"1/2\",\"1/1\"]");
}

#[test]
fn binary_exit_codes() {
    assert_eq!(bin().args(["verify", "prop2.1", "--q", "20", "--delta", "1"]).status().unwrap().code(), Some(0));
    assert_eq!(bin().args(["list", "--q", "nope"]).output().unwrap().status.code(), Some(2));
    assert_eq!(bin().arg("--help").output().unwrap().status.code(), Some(0));
}
