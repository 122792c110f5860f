//! Built-in figure recipes: named key=value presets compiled into the
//! binary from the `recipes/` directory, so a plot is reproducible from its
//! name alone. Command-line flags still override individual values.

/// Names accepted by `--recipe`, in display order.
pub const NAMES: [&str; 9] =
    ["fig2", "fig3", "fig4", "fig5", "fig6", "fig7", "fig8", "fig9", "fig10"];

/// The key=value text of a built-in recipe.
pub fn builtin(name: &str) -> Option<&'static str> {
    Some(match name {
        "fig2" => include_str!("../recipes/fig2.conf"),
        "fig3" => include_str!("../recipes/fig3.conf"),
        "fig4" => include_str!("../recipes/fig4.conf"),
        "fig5" => include_str!("../recipes/fig5.conf"),
        "fig6" => include_str!("../recipes/fig6.conf"),
        "fig7" => include_str!("../recipes/fig7.conf"),
        "fig8" => include_str!("../recipes/fig8.conf"),
        "fig9" => include_str!("../recipes/fig9.conf"),
        "fig10" => include_str!("../recipes/fig10.conf"),
        _ => return None,
    })
}
