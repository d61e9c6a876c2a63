use proptest::prelude::*;

use generica::parser::parse_session;

const VARS: [&str; 3] = ["x", "y", "z"];

fn poly(nvars: usize) -> impl Strategy<Value = String> {
    prop::collection::vec((-9i64..10, prop::collection::vec(0u32..3, nvars)), 0..4).prop_map(move |terms| {
        if terms.is_empty() {
            return "0".to_string();
        }
        let parts: Vec<String> = terms
            .iter()
            .map(|(c, exps)| {
                let mut factors = vec![format!("({c})")];
                for (v, e) in exps.iter().enumerate() {
                    if *e > 0 {
                        factors.push(format!("{}^{e}", VARS[v]));
                    }
                }
                factors.join("*")
            })
            .collect();
        parts.join(" + ")
    })
}

fn session_text() -> impl Strategy<Value = String> {
    (1usize..=3, prop::sample::select(vec![2u32, 7, 101, 32003]), any::<bool>()).prop_flat_map(|(n, p, lex)| {
        (
            Just((n, p, lex)),
            prop::collection::vec(poly(n), 1..4),
            prop::collection::vec(poly(n), 1..3),
            prop::collection::vec(poly(n), 4),
            prop::option::of(poly(n)),
        )
            .prop_map(|((n, p, lex), gens, tuple, entries, modulus)| {
                let order = if lex { " order lex" } else { "" };
                let modulus = modulus.map_or(String::new(), |m| format!(" mod {m}"));
                let c = tuple.len();
                let units = vec!["U"; c].join(", ");
                [
                    format!("ring GF({p})[{}]{order}{modulus};", VARS[..n].join(",")),
                    format!("ideal I = {};", gens.join(", ")),
                    "ideal U = 1;".to_string(),
                    format!("tuple T = {};", tuple.join(", ")),
                    format!("matrix M 2 2 = [{}, {}; {}, {}];", entries[0], entries[1], entries[2], entries[3]),
                    format!("space S = sum({units}) order 2;"),
                    "height I;".to_string(),
                    "grade I --module U --method koszul;".to_string(),
                    "tor I I 1;".to_string(),
                    "detideal M 1;".to_string(),
                    "perturb T S --target regular --budget 3;".to_string(),
                ]
                .join("\n")
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pretty_print_reparses_to_the_same_session(text in session_text()) {
        let s = parse_session(&text).unwrap();
        let printed = s.to_string();
        let again = parse_session(&printed).unwrap();
        prop_assert_eq!(&s, &again);
        prop_assert_eq!(printed, again.to_string());
    }
}
