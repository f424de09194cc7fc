//! Components of the multioperator of the free loop, from the connection
//! recursion and from primitive elements.

use sabinin::free::{multioperator_ms, multioperator_su, phi13_closed_form};

fn main() -> sabinin::Result<()> {
    for bidegree in [(1, 2), (1, 3), (2, 2)] {
        let ms = multioperator_ms(4, bidegree)?;
        let su = multioperator_su(4, bidegree)?;
        println!("bidegree {bidegree:?}");
        println!("  recursive: {}", ms.format());
        println!("  primitive: {}", su.format());
        if bidegree == (1, 3) {
            println!("  recursive matches its closed form: {}", ms == phi13_closed_form(ms.context())?);
        }
    }
    Ok(())
}
