/// A famous line, stored exactly as usually written.
#[derive(Debug, Clone, Copy)]
pub struct GalleryEntry {
    pub source: &'static str,
    /// `None` when the full text is not bundled.
    pub text: Option<&'static str>,
    pub quoted_educated: &'static str,
    pub quoted_random: &'static str,
}

const fn entry(
    source: &'static str,
    text: Option<&'static str>,
    quoted_educated: &'static str,
    quoted_random: &'static str,
) -> GalleryEntry {
    GalleryEntry {
        source,
        text,
        quoted_educated,
        quoted_random,
    }
}

pub static GALLERY: [GalleryEntry; 14] = [
    entry("Muhammad Ali", Some("Me, we"), "4.6 seconds", "38.2 days"),
    entry("The Terminator", Some("I'll be back"), "2.8 minutes", "40,581,179 years"),
    entry("Julius Caesar", Some("The die is cast"), "a bit over half an hour", "2.2×10^13 years"),
    entry("Yoda", Some("May the Force be with you"), "8.4 days", ""),
    entry("essay title", None, "183.4 years", ""),
    entry(
        "Franklin D. Roosevelt",
        Some("The only thing we have to fear is fear itself"),
        "3,658 years",
        "",
    ),
    entry(
        "Spice Girls",
        Some("I'll tell you what I want, what I really really want"),
        "73,000 years",
        "",
    ),
    entry(
        "Rolling Stones",
        Some("I can't get no satisfaction, gonna try and I try and I try and I try"),
        "10^9 years",
        "",
    ),
    entry(
        "Winston Churchill",
        Some("Success is not final, failure is not fatal. It is the courage to continue that counts"),
        "2.7×10^13 years",
        "",
    ),
    entry(
        "Stephen Hawking",
        Some(
            "We are just an advanced breed of monkeys on a minor planet of a very average star. \
             But we can understand the Universe",
        ),
        "10^22 years",
        "",
    ),
    entry("Emily Dickinson, \"Hope\" is the thing with feathers", None, "5.5×10^79 years", ""),
    entry("Twinkle twinkle little star (lullaby)", None, "8.4×10^142 years", ""),
    entry("Hamlet", Some("To be or not to be"), "3 hours and 4 minutes", "4.2×10^17 years"),
    entry("Hamlet (complete play)", None, "10^42,277 years", "10^232,784 years"),
];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ten_bundled_phrases() {
        assert_eq!(GALLERY.iter().filter(|e| e.text.is_some()).count(), 10);
    }
}
