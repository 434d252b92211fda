//! Name-keyed registries of interchangeable strategies.

use std::fmt;

/// Anything that can live in a [`Registry`].
pub trait Named {
    fn name(&self) -> &'static str;
}

pub struct Registry<T: ?Sized + Named> {
    entries: Vec<Box<T>>,
}

impl<T: ?Sized + Named> Registry<T> {
    pub fn new() -> Self {
        Registry {
            entries: Vec::new(),
        }
    }

    /// Adds a strategy. A later registration under the same name replaces
    /// the earlier one.
    pub fn register(&mut self, s: Box<T>) -> &mut Self {
        self.entries.retain(|e| e.name() != s.name());
        self.entries.push(s);
        self
    }

    pub fn get(&self, name: &str) -> Option<&T> {
        self.entries.iter().find(|e| e.name() == name).map(|b| &**b)
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.iter().map(|e| e.name()).collect()
    }
}

impl<T: ?Sized + Named> Default for Registry<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T: ?Sized + Named> fmt::Debug for Registry<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.names()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    trait Greeter: Named {
        fn greet(&self) -> String;
    }

    struct Plain(&'static str);
    impl Named for Plain {
        fn name(&self) -> &'static str {
            self.0
        }
    }
    impl Greeter for Plain {
        fn greet(&self) -> String {
            format!("hi from {}", self.0)
        }
    }

    #[test]
    fn lookup_and_replace() {
        let mut r: Registry<dyn Greeter> = Registry::new();
        r.register(Box::new(Plain("a")))
            .register(Box::new(Plain("b")));
        assert_eq!(r.names(), vec!["a", "b"]);
        assert_eq!(r.get("b").unwrap().greet(), "hi from b");
        assert!(r.get("c").is_none());
        r.register(Box::new(Plain("a")));
        assert_eq!(r.names(), vec!["b", "a"]);
    }
}
