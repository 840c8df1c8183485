//! Parse, inspect and re-emit the text format, including a rejected file.

use bifactor::{emit_instance, parse_instance};

fn main() {
    let text = "bifactor 1\nxy 2 2\nedge 1 1 3\nedge 0 0 1\ngx 1 2\nfx 1 3\nfy 1 3\ngy 0 1\n";
    let doc = parse_instance(text).unwrap();
    println!("edges in canonical order: {:?}", doc.instance.edges());
    println!("gy = {:?}", doc.g_y);
    let canonical = emit_instance(&doc);
    print!("{canonical}");
    assert_eq!(parse_instance(&canonical).unwrap(), doc);

    let broken = "bifactor 1\nxy 1 1\nedge 0 0 0\ngx 2\nfx 1\nfy 1\n";
    match parse_instance(broken) {
        Ok(_) => unreachable!(),
        Err(e) => println!("rejected: {e}"),
    }
}
