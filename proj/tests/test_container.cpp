#include <doctest.h>

#include "corpusranker/container.hpp"
#include "corpusranker/errors.hpp"
#include "corpusranker/hash.hpp"
#include "support/temp_dir.hpp"

using namespace corpusranker;

TEST_CASE("crc32 matches the published check value") {
    CHECK(crc32("123456789", 9) == 0xCBF43926u);
    CHECK(crc32("", 0) == 0x00000000u);
}

TEST_CASE("container round-trips sections") {
    ContainerWriter writer;
    writer.add_section("AAAA", "hello");
    writer.add_section("BBBB", std::string("\0\x01\x02", 3));
    std::string bytes = writer.serialize();

    ContainerReader reader(bytes);
    CHECK(reader.has("AAAA"));
    CHECK(reader.has("BBBB"));
    CHECK_FALSE(reader.has("CCCC"));
    CHECK(reader.section("AAAA") == "hello");
    CHECK(reader.section("BBBB") == std::string("\0\x01\x02", 3));
}

TEST_CASE("zero-byte file is a corruption error") {
    test_support::TempDir dir;
    dir.write("empty.crkr", "");
    CHECK_THROWS_AS(ContainerReader::from_file(dir.file("empty.crkr")), FormatError);
}

TEST_CASE("bad magic is rejected") {
    CHECK_THROWS_AS(ContainerReader("NOPE this is not a container"), FormatError);
}

TEST_CASE("unsupported version is rejected") {
    ContainerWriter writer;
    writer.add_section("AAAA", "x");
    std::string bytes = writer.serialize();
    bytes[4] = 99;  // version field
    CHECK_THROWS_AS(ContainerReader{bytes}, FormatError);
}

TEST_CASE("truncated payload is rejected") {
    ContainerWriter writer;
    writer.add_section("AAAA", "some payload bytes");
    std::string bytes = writer.serialize();
    bytes.resize(bytes.size() - 4);
    CHECK_THROWS_AS(ContainerReader{bytes}, FormatError);
}

TEST_CASE("flipped payload byte fails the section crc") {
    ContainerWriter writer;
    writer.add_section("AAAA", "some payload bytes");
    std::string bytes = writer.serialize();
    bytes.back() ^= 0x40;
    ContainerReader reader(bytes);
    CHECK_THROWS_AS(reader.section("AAAA"), FormatError);
}

TEST_CASE("byte reader detects truncation inside a section") {
    ByteWriter w;
    w.str("hello");
    std::string payload = w.take();
    payload.resize(payload.size() - 2);
    ByteReader r(payload);
    CHECK_THROWS_AS(r.str(), FormatError);
}

TEST_CASE("byte writer/reader round-trip of primitives") {
    ByteWriter w;
    w.u8(7);
    w.u32(0xDEADBEEFu);
    w.u64(0x0123456789ABCDEFull);
    w.i32(-42);
    w.f64(-0.15625);
    w.str("token");
    std::map<std::string, std::string> m{{"k1", "v1"}, {"k2", "v2"}};
    w.string_map(m);

    ByteReader r(w.bytes());
    CHECK(r.u8() == 7);
    CHECK(r.u32() == 0xDEADBEEFu);
    CHECK(r.u64() == 0x0123456789ABCDEFull);
    CHECK(r.i32() == -42);
    CHECK(r.f64() == -0.15625);
    CHECK(r.str() == "token");
    CHECK(r.string_map() == m);
    CHECK(r.exhausted());
}
