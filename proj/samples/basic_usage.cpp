// Small tour of the dictionary API: inserts, exact and ordered lookups,
// prefix iteration, deletion and the space report.
#include <cstdio>

#include <ctriepp/ctriepp.hpp>

int main() {
    ctriepp::keyword_dictionary dict;

    const char* words[] = {"brauereibräute", "brauen", "brauchbares",
                           "brausendes", "brauereibier"};
    for (const char* w : words)
        std::printf("insert %-16s -> id %u\n", w, dict.insert(w));

    std::printf("locate brauen        -> id %u\n", dict.locate("brauen"));
    std::printf("locate brauer        -> id %u (0 = absent)\n",
                dict.locate("brauer"));

    const uint32_t p = dict.predecessor("brauereibock");
    const uint32_t s = dict.successor("brauereibock");
    std::printf("around brauereibock  -> pred %s, succ %s\n",
                dict.keyword(p).c_str(), dict.keyword(s).c_str());

    std::printf("prefix brau          ->");
    ctriepp::prefix_cursor cur = dict.locate_prefix("brau");
    for (uint32_t id = cur.next(); id != 0; id = cur.next())
        std::printf(" %s", dict.keyword(id).c_str());
    std::printf("\n");

    dict.erase("brausendes");
    std::printf("after erase          -> %u keywords, %llu trie nodes\n",
                dict.size(),
                (unsigned long long)dict.abstract_node_count());

    const ctriepp::space_report r = dict.space();
    std::printf("space                -> %llu payload bits + %llu aux bits\n",
                (unsigned long long)r.text_payload_bits,
                (unsigned long long)r.aux_bits());
    return 0;
}
