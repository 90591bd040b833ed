//! Built-in library of small semigroups.
//!
//! The catalog is the deterministic test corpus used by the integration
//! suite and addressable from the command line as `@name`. It holds the
//! basic chains, cyclic groups, the Klein group and the symmetric group on
//! three letters, a curated family of direct products bounded by 64
//! elements, and reduced-product constructions (0-extensions and cones).

use crate::construct::{chain, cone, direct_product, reduced_product, two};
use crate::semigroup::FiniteSemigroup;

/// One named member of the library.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub semigroup: FiniteSemigroup,
}

/// The cyclic group of order `n`, labeled `e, g, g2, …`.
pub fn cyclic(n: usize) -> FiniteSemigroup {
    assert!(n >= 1);
    let table: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..n).map(|j| (i + j) % n).collect())
        .collect();
    let labels: Vec<String> = (0..n)
        .map(|i| match i {
            0 => "e".to_string(),
            1 => "g".to_string(),
            _ => format!("g{i}"),
        })
        .collect();
    FiniteSemigroup::from_table_with_labels(table, labels).expect("cyclic table is associative")
}

/// The symmetric group on `{0,1,2}`, elements in lexicographic one-line
/// order, composition `(p·q)(i) = p(q(i))`.
pub fn symmetric3() -> FiniteSemigroup {
    let perms: Vec<[usize; 3]> = vec![
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    let index_of = |p: &[usize; 3]| perms.iter().position(|q| q == p).unwrap();
    let table: Vec<Vec<usize>> = perms
        .iter()
        .map(|p| {
            perms
                .iter()
                .map(|q| index_of(&[p[q[0]], p[q[1]], p[q[2]]]))
                .collect()
        })
        .collect();
    let labels = vec!["id", "(12)", "(01)", "(012)", "(021)", "(02)"]
        .into_iter()
        .map(String::from)
        .collect();
    FiniteSemigroup::from_table_with_labels(table, labels).expect("composition is associative")
}

fn entry(name: &str, semigroup: FiniteSemigroup) -> CatalogEntry {
    CatalogEntry {
        name: name.to_string(),
        semigroup,
    }
}

/// The full library in its fixed order.
pub fn catalog() -> Vec<CatalogEntry> {
    let mut out = Vec::new();

    out.push(entry("two", two()));
    for n in 2..=8 {
        out.push(entry(&format!("chain{n}"), chain(n).unwrap()));
    }
    let diamond = direct_product(&two(), &two()).unwrap();
    out.push(entry("diamond", diamond.clone()));

    let z2 = cyclic(2);
    let z3 = cyclic(3);
    let z4 = cyclic(4);
    let z5 = cyclic(5);
    let z6 = cyclic(6);
    out.push(entry("z2", z2.clone()));
    out.push(entry("z3", z3.clone()));
    out.push(entry("z4", z4.clone()));
    out.push(entry("z5", z5.clone()));
    out.push(entry("z6", z6.clone()));
    let klein = direct_product(&z2, &z2).unwrap();
    out.push(entry("klein", klein.clone()));
    let s3 = symmetric3();
    out.push(entry("s3", s3.clone()));

    // direct products, bounded by 64 elements
    let t = two();
    let c2 = chain(2).unwrap();
    let c3 = chain(3).unwrap();
    let c4 = chain(4).unwrap();
    let c8 = chain(8).unwrap();
    let pairs: Vec<(&str, &FiniteSemigroup, &FiniteSemigroup)> = vec![
        ("two_x_z2", &t, &z2),
        ("two_x_z3", &t, &z3),
        ("two_x_s3", &t, &s3),
        ("chain2_x_z2", &c2, &z2),
        ("chain4_x_z2", &c4, &z2),
        ("diamond_x_z2", &diamond, &z2),
        ("chain2_x_s3", &c2, &s3),
        ("chain8_x_s3", &c8, &s3),
        ("two_x_chain2", &t, &c2),
        ("chain2_x_chain2", &c2, &c2),
        ("two_x_diamond", &t, &diamond),
        ("chain3_x_klein", &c3, &klein),
        ("z2_x_z3", &z2, &z3),
        ("z2_x_s3", &z2, &s3),
    ];
    for (name, a, b) in pairs {
        out.push(entry(name, direct_product(a, b).unwrap()));
    }

    // 0-extensions and cones
    for (name, g) in [
        ("zero_ext_z2", &z2),
        ("zero_ext_z3", &z3),
        ("zero_ext_z4", &z4),
        ("zero_ext_z5", &z5),
        ("zero_ext_z6", &z6),
        ("zero_ext_klein", &klein),
        ("zero_ext_s3", &s3),
    ] {
        out.push(entry(name, cone(g, 1).unwrap().semigroup));
    }
    for (name, g, levels) in [
        ("cone2_z2", &z2, 2usize),
        ("cone3_z2", &z2, 3),
        ("cone4_z2", &z2, 4),
        ("cone2_z3", &z3, 2),
        ("cone2_s3", &s3, 2),
        ("cone4_s3", &s3, 4),
    ] {
        out.push(entry(name, cone(g, levels).unwrap().semigroup));
    }

    // further reduced products over non-singleton and empty ideals
    out.push(entry(
        "rp_chain2_d1_z2",
        reduced_product(&c2, &[0, 1], &z2).unwrap().semigroup,
    ));
    out.push(entry(
        "rp_chain4_d1_z2",
        reduced_product(&c4, &[0, 1], &z2).unwrap().semigroup,
    ));
    out.push(entry(
        "rp_diamond_d1_z2",
        reduced_product(&diamond, &[0, 1], &z2).unwrap().semigroup,
    ));
    out.push(entry(
        "rp_chain2_empty_z2",
        reduced_product(&c2, &[], &z2).unwrap().semigroup,
    ));

    let zext_z2 = cone(&z2, 1).unwrap().semigroup;
    out.push(entry(
        "zero_ext_z2_x_zero_ext_z2",
        direct_product(&zext_z2, &zext_z2).unwrap(),
    ));

    out
}

/// Looks up a catalog member by name.
pub fn find(name: &str) -> Option<FiniteSemigroup> {
    catalog()
        .into_iter()
        .find(|e| e.name == name)
        .map(|e| e.semigroup)
}
