#include "procevo/error.hpp"
#include "procevo/term.hpp"
#include "procevo/unicode.hpp"

#include <gtest/gtest.h>

namespace procevo {
namespace {

TEST(Iri, RejectsEmptyAndWhitespace) {
    EXPECT_THROW(Iri(""), InvalidTerm);
    EXPECT_THROW(Iri("urn:a b"), InvalidTerm);
    EXPECT_THROW(Iri("urn:a\tb"), InvalidTerm);
    EXPECT_THROW(Iri("urn:a>b"), InvalidTerm);
    EXPECT_NO_THROW(Iri("urn:procevo:model:e1"));
    EXPECT_NO_THROW(Iri("http://example.org/ä#x"));
}

TEST(Literal, StoresNfc) {
    const Literal decomposed("cafe\xCC\x81");
    const Literal composed("caf\xC3\xA9");
    EXPECT_EQ(decomposed, composed);
    EXPECT_EQ(decomposed.lexical(), "caf\xC3\xA9");
    EXPECT_TRUE(unicode::is_nfc(decomposed.lexical()));
}

TEST(Literal, LanguageTagIsPartOfIdentity) {
    EXPECT_NE(Literal("x", "en"), Literal("x"));
    EXPECT_NE(Literal("x", "en"), Literal("x", "de"));
    EXPECT_THROW(Literal("x", "not a tag"), InvalidTerm);
}

TEST(Literal, RejectsInvalidUtf8) { EXPECT_THROW(Literal("\xFF\xFE"), InvalidTerm); }

TEST(Term, Rendering) {
    EXPECT_EQ(to_string(Term(Iri("urn:a"))), "<urn:a>");
    EXPECT_EQ(to_string(Term(Literal("a\"b\\c\nd\te", "en"))), "\"a\\\"b\\\\c\\nd\\te\"@en");
}

TEST(Term, IrisOrderBeforeLiterals) {
    EXPECT_LT(Term(Iri("urn:z")), Term(Literal("a")));
}

TEST(Unicode, DecodeReplacesMalformedBytes) {
    EXPECT_EQ(unicode::decode("a\xC3\xA9"), (std::u32string{U'a', U'é'}));
    EXPECT_EQ(unicode::decode("a\xFF"), (std::u32string{U'a', U'�'}));
}

} // namespace
} // namespace procevo
