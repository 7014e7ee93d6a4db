#include "procevo/error.hpp"
#include "procevo/membership.hpp"
#include "procevo/process_xml.hpp"

#include "test_support.hpp"

#include <gtest/gtest.h>

namespace procevo {
namespace {

const ProcessSchema schema = ProcessSchema::default_schema();
constexpr std::string_view kBase = "urn:procevo:model:";

Graph parse(std::string_view xml) { return parse_process_xml(xml, schema, kBase).graph; }

TEST(ProcessXml, EmptyModel) { EXPECT_TRUE(parse("<model/>").empty()); }

TEST(ProcessXml, HandAppliedMapping) {
    const Graph g = parse(R"(<model><entity id="e1" type="Activity"><property name="name">Design</property></entity></model>)");
    const Graph expected{
        {Iri("urn:procevo:model:e1"), Iri("urn:procevo:schema#type"), Iri("urn:procevo:model:type/Activity")},
        {Iri("urn:procevo:model:e1"), Iri("urn:procevo:schema#name"), Literal("Design")},
    };
    EXPECT_EQ(g, expected);
}

TEST(ProcessXml, RefsBecomeRelations) {
    const Graph g = parse(R"(<model>
      <entity id="m1" type="ProcessModule"><ref name="contains" target="a1"/></entity>
      <entity id="a1" type="Activity"><ref name="responsible" target="r1"/></entity>
      <entity id="r1" type="Role"/>
    </model>)");
    EXPECT_TRUE(g.contains({Iri("urn:procevo:model:m1"), Iri("urn:procevo:schema#contains"), Iri("urn:procevo:model:a1")}));
    EXPECT_TRUE(g.contains({Iri("urn:procevo:model:a1"), Iri("urn:procevo:schema#responsible"), Iri("urn:procevo:model:r1")}));
    EXPECT_EQ(g.size(), 5u);
}

TEST(ProcessXml, TruncatedDocumentIsSyntaxError) { EXPECT_THROW(parse("<model><entity"), XmlSyntaxError); }

TEST(ProcessXml, DuplicateIdIsError) {
    EXPECT_THROW(parse(R"(<model><entity id="a" type="Role"/><entity id="a" type="Role"/></model>)"), DuplicateEntityId);
}

TEST(ProcessXml, UnknownNamesAndDanglingRefsWarn) {
    const ProcessXmlResult r = parse_process_xml(R"(<model>
      <entity id="a" type="Gadget">
        <property name="colour">red</property>
        <ref name="likes" target="b"/>
        <ref name="uses" target="ghost"/>
      </entity>
    </model>)", schema, kBase);
    EXPECT_EQ(r.warnings.size(), 4u);
    // unknown property and relation produce nothing; the dangling ref stays
    EXPECT_EQ(r.graph.size(), 2u);
    EXPECT_TRUE(r.graph.contains({Iri("urn:procevo:model:a"), Iri("urn:procevo:schema#uses"), Iri("urn:procevo:model:ghost")}));
}

TEST(ProcessXml, TextIsKeptVerbatimAndNormalized) {
    const Graph g = parse("<model><entity id=\"a\" type=\"Role\"><property name=\"name\"> Pr&#252;fer &amp; Co\ne\xCC\x81 </property></entity></model>");
    const Statement expected{Iri("urn:procevo:model:a"), Iri("urn:procevo:schema#name"), Literal(" Prüfer & Co\né ")};
    EXPECT_TRUE(g.contains(expected));
}

TEST(ProcessXml, ReverseMappingReconstructsTheSource) {
    ProcessModel model;
    model.entities["m1"] = {"ProcessModule", {{"name", {"Modul \"A\" <1>"}}}, {{"contains", "a1"}, {"contains", "p1"}}};
    model.entities["a1"] = {"Activity", {{"name", {"Plan"}}, {"description", {"line1\nline2\ttab", "second"}}},
                            {{"produces", "p1"}, {"responsible", "r1"}}};
    model.entities["p1"] = {"Product", {{"name", {"Übergabe & Co"}}}, {}};
    model.entities["r1"] = {"Role", {}, {}};
    const std::string xml = write_process_xml(model);
    const ProcessXmlResult r = parse_process_xml(xml, schema, kBase);
    EXPECT_TRUE(r.warnings.empty());
    EXPECT_EQ(r.entity_count, 4u);
    EXPECT_EQ(reconstruct_process_model(r.graph, schema, kBase), model);
    EXPECT_EQ(entities_of(r.graph, schema).size(), 4u);
}

TEST(ProcessXml, EntityCountEqualsTypedSubjects) {
    testing::Random rng(41);
    for (int round = 0; round < 30; ++round) {
        ProcessModel model;
        const std::size_t n = testing::uniform(rng, 40);
        for (std::size_t i = 0; i < n; ++i) {
            ProcessEntity e{"Activity", {{"name", {"n" + std::to_string(testing::uniform(rng, 5))}}}, {}};
            if (i > 0) e.refs.emplace("uses", "x" + std::to_string(testing::uniform(rng, i)));
            model.entities["x" + std::to_string(i)] = e;
        }
        const ProcessXmlResult r = parse_process_xml(write_process_xml(model), schema, kBase);
        EXPECT_EQ(r.entity_count, n);
        EXPECT_EQ(entities_of(r.graph, schema).size(), n);
        EXPECT_EQ(reconstruct_process_model(r.graph, schema, kBase), model);
    }
}

} // namespace
} // namespace procevo
