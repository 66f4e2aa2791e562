//! Browser bindings; filled in after the core stabilizes.
