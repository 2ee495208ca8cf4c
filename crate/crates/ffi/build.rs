use std::path::PathBuf;

fn main() {
    let crate_dir = PathBuf::from(std::env::var("CARGO_MANIFEST_DIR").unwrap());
    let source = crate_dir.join("src/lib.rs");
    println!("cargo:rerun-if-changed={}", source.display());

    let config = cbindgen::Config {
        language: cbindgen::Language::C,
        include_guard: Some("DSMFUSE_H".into()),
        autogen_warning: Some("/* Generated by cbindgen from src/lib.rs; do not edit. */".into()),
        cpp_compat: true,
        documentation: true,
        enumeration: cbindgen::EnumConfig {
            prefix_with_name: true,
            rename_variants: cbindgen::RenameRule::ScreamingSnakeCase,
            ..Default::default()
        },
        ..Default::default()
    };
    let bindings = cbindgen::Builder::new()
        .with_config(config)
        .with_src(&source)
        .generate()
        .expect("generate C header");
    bindings.write_to_file(crate_dir.join("include/dsmfuse.h"));
}
