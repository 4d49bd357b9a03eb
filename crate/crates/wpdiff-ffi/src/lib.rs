//! C ABI surface (filled in once the core API is final).
