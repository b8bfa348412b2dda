#include "osn/synthgen.hpp"

namespace osn {

Gazetteer SynthVocab::gazetteer() const {
    Gazetteer gaz;
    for (const auto& c : cities) gaz.add(c.name, c.coords);
    return gaz;
}

NameGenderTable SynthVocab::name_table() const {
    NameGenderTable tbl;
    for (const auto& n : names) tbl.add(n.name, n.female, n.male);
    return tbl;
}

namespace {

SynthVocab make_builtin() {
    SynthVocab v;
    // SSA-style given names with skewed counts; a handful are ambiguous.
    const struct {
        const char* name;
        unsigned f, m;
    } names[] = {
        {"mary", 7065, 12},     {"james", 15, 9231},    {"linda", 5204, 8},
        {"robert", 10, 8769},   {"patricia", 4631, 6},  {"john", 12, 9375},
        {"susan", 4012, 5},     {"michael", 20, 9812},  {"karen", 3956, 4},
        {"david", 9, 8301},     {"nancy", 3511, 3},     {"william", 8, 7954},
        {"lisa", 3388, 6},      {"richard", 5, 7213},   {"betty", 3190, 2},
        {"thomas", 7, 6987},    {"sandra", 3004, 3},    {"charles", 6, 6504},
        {"carol", 2897, 4},     {"joseph", 8, 6111},    {"amanda", 2765, 2},
        {"daniel", 5, 5899},    {"melissa", 2688, 1},   {"matthew", 4, 5677},
        {"deborah", 2544, 2},   {"anthony", 3, 5432},   {"stephanie", 2481, 1},
        {"mark", 6, 5216},      {"rebecca", 2370, 2},   {"donald", 4, 5001},
        {"laura", 2255, 1},     {"steven", 3, 4897},    {"helen", 2104, 1},
        {"paul", 5, 4677},      {"sharon", 2043, 2},    {"andrew", 2, 4512},
        {"cynthia", 1987, 1},   {"kenneth", 3, 4390},   {"kathleen", 1911, 1},
        {"george", 4, 4213},    {"emily", 1854, 1},     {"joshua", 2, 4102},
        {"donna", 1799, 2},     {"kevin", 3, 3989},     {"michelle", 1743, 1},
        {"brian", 2, 3854},     {"dorothy", 1688, 1},   {"edward", 3, 3712},
        {"amy", 1632, 1},       {"ronald", 2, 3598},    {"angela", 1577, 1},
        {"timothy", 2, 3488},   {"ashley", 1521, 9},    {"jason", 1, 3375},
        {"brenda", 1466, 1},    {"jeffrey", 2, 3266},   {"emma", 1410, 1},
        {"ryan", 1, 3154},      {"anna", 1355, 1},      {"jacob", 1, 3043},
        {"pamela", 1299, 1},    {"gary", 2, 2932},      {"nicole", 1244, 1},
        {"nicholas", 1, 2821},  {"samantha", 1188, 1},  {"eric", 1, 2710},
        {"katherine", 1133, 1}, {"jonathan", 1, 2599},  {"christine", 1077, 1},
        {"stephen", 1, 2488},   {"debra", 1022, 1},     {"larry", 1, 2377},
        {"rachel", 966, 1},     {"justin", 1, 2266},    {"carolyn", 911, 1},
        {"scott", 1, 2155},     {"janet", 855, 1},      {"brandon", 1, 2044},
        {"virginia", 800, 1},   {"frank", 1, 1933},     {"maria", 744, 1},
        {"benjamin", 1, 1822},  {"heather", 689, 1},    {"gregory", 1, 1711},
        {"diane", 633, 1},      {"samuel", 1, 1600},    {"julie", 578, 1},
        {"raymond", 1, 1489},   {"joyce", 522, 1},      {"patrick", 1, 1378},
        {"victoria", 467, 1},   {"alexander", 1, 1267}, {"kelly", 411, 387},
        {"jack", 1, 1156},      {"christina", 356, 1},  {"dennis", 1, 1045},
        {"joan", 300, 1},       {"jerry", 1, 934},      {"evelyn", 245, 1},
        {"tyler", 1, 823},      {"lauren", 189, 1},     {"aaron", 1, 712},
        {"judith", 134, 1},     {"jose", 1, 601},       {"megan", 78, 1},
        {"adam", 1, 490},       {"cheryl", 23, 1},      {"henry", 1, 379},
        {"andrea", 340, 1},     {"nathan", 1, 268},     {"hannah", 290, 1},
        {"douglas", 1, 157},    {"jordan", 130, 152},   {"zachary", 1, 146},
        {"alice", 3122, 2},     {"casey", 210, 245},    {"peter", 2, 3311},
        {"grace", 1460, 1},     {"walter", 1, 2214},    {"riley", 188, 166},
    };
    for (const auto& n : names) v.names.push_back({n.name, n.f, n.m});

    const struct {
        const char* name;
        double lat, lon;
    } cities[] = {
        {"cleveland", 41.4993, -81.6944},    {"chicago", 41.8781, -87.6298},
        {"new york", 40.7128, -74.0060},     {"los angeles", 34.0522, -118.2437},
        {"houston", 29.7604, -95.3698},      {"phoenix", 33.4484, -112.0740},
        {"philadelphia", 39.9526, -75.1652}, {"san antonio", 29.4241, -98.4936},
        {"san diego", 32.7157, -117.1611},   {"dallas", 32.7767, -96.7970},
        {"austin", 30.2672, -97.7431},       {"columbus", 39.9612, -82.9988},
        {"seattle", 47.6062, -122.3321},     {"denver", 39.7392, -104.9903},
        {"boston", 42.3601, -71.0589},       {"nashville", 36.1627, -86.7816},
        {"baltimore", 39.2904, -76.6122},    {"portland", 45.5152, -122.6784},
        {"milwaukee", 43.0389, -87.9065},    {"atlanta", 33.7490, -84.3880},
        {"miami", 25.7617, -80.1918},        {"oakland", 37.8044, -122.2712},
        {"minneapolis", 44.9778, -93.2650},  {"tulsa", 36.1540, -95.9928},
        {"ankara", 39.9334, 32.8597},        {"istanbul", 41.0082, 28.9784},
        {"london", 51.5074, -0.1278},        {"paris", 48.8566, 2.3522},
        {"berlin", 52.5200, 13.4050},        {"madrid", 40.4168, -3.7038},
        {"rome", 41.9028, 12.4964},          {"vienna", 48.2082, 16.3738},
        {"prague", 50.0755, 14.4378},        {"warsaw", 52.2297, 21.0122},
        {"budapest", 47.4979, 19.0402},      {"athens", 37.9838, 23.7275},
        {"helsinki", 60.1699, 24.9384},      {"oslo", 59.9139, 10.7522},
        {"stockholm", 59.3293, 18.0686},     {"copenhagen", 55.6761, 12.5683},
        {"dublin", 53.3498, -6.2603},        {"lisbon", 38.7223, -9.1393},
        {"tokyo", 35.6762, 139.6503},        {"osaka", 34.6937, 135.5023},
        {"seoul", 37.5665, 126.9780},        {"beijing", 39.9042, 116.4074},
        {"shanghai", 31.2304, 121.4737},     {"mumbai", 19.0760, 72.8777},
        {"delhi", 28.7041, 77.1025},         {"sydney", -33.8688, 151.2093},
        {"melbourne", -37.8136, 144.9631},   {"auckland", -36.8485, 174.7633},
        {"toronto", 43.6532, -79.3832},      {"vancouver", 49.2827, -123.1207},
        {"montreal", 45.5019, -73.5674},     {"mexico city", 19.4326, -99.1332},
        {"lima", -12.0464, -77.0428},        {"bogota", 4.7110, -74.0721},
        {"santiago", -33.4489, -70.6693},    {"cairo", 30.0444, 31.2357},
    };
    for (const auto& c : cities) v.cities.push_back({c.name, {c.lat, c.lon}});

    v.topic_words = {
        {"soccer",   "league",  "goal",     "striker", "defender", "referee", "stadium",
         "midfield", "penalty", "keeper",   "corner",  "tackle",   "offside", "derby",
         "transfer", "coach",   "training", "fixture", "champion", "relegation",
         "kickoff",  "header",  "assist",   "squad",   "bench",    "winger",  "playoff",
         "trophy",   "scoreline", "crossbar", "fullback", "nutmeg", "volley",  "dribble"},
        {"recipe",   "oven",     "garlic",  "saute",    "simmer",  "butter",  "flour",
         "yeast",    "dough",    "roast",   "seasoning", "paprika", "basil",  "skillet",
         "whisk",    "marinade", "broth",   "glaze",    "caramel", "dessert", "pastry",
         "sourdough", "braise",  "crust",   "filling",  "zest",    "drizzle", "garnish",
         "spatula",  "preheat",  "knead",   "frosting", "vinaigrette", "poach"},
        {"guitar",   "chord",    "melody",  "rhythm",   "drummer", "bassline", "vinyl",
         "concert",  "encore",   "lyrics",  "chorus",   "verse",   "tempo",   "acoustic",
         "amplifier", "festival", "setlist", "harmony", "falsetto", "riff",   "cadence",
         "orchestra", "maestro", "soprano", "percussion", "ballad", "remix",  "sampler",
         "turntable", "crescendo", "octave", "tuning",  "fretboard", "snare"},
        {"compiler", "kernel",   "thread",  "latency",  "deploy",  "container", "database",
         "query",    "index",    "cache",   "protocol", "socket",  "encryption", "firewall",
         "debugger", "refactor", "backend", "frontend", "runtime", "binary",  "packet",
         "cluster",  "replica",  "shard",   "pipeline", "commit",  "branch",  "merge",
         "sandbox",  "virtualize", "namespace", "scheduler", "bytecode", "middleware"},
        {"passport", "itinerary", "hostel",  "luggage",  "voyage",  "excursion", "souvenir",
         "landmark", "cathedral", "museum",  "harbor",   "trail",   "summit",  "canyon",
         "glacier",  "lagoon",    "safari",  "monsoon",  "jetlag",  "visa",    "backpack",
         "campsite", "ferry",     "airfare", "layover",  "customs", "dune",    "reef",
         "waterfall", "vineyard", "temple",  "bazaar",   "gondola", "lighthouse"},
        {"dividend", "portfolio", "equity",  "hedge",    "bond",    "yield",   "inflation",
         "ledger",   "audit",     "margin",  "futures",  "broker",  "asset",   "liquidity",
         "valuation", "arbitrage", "escrow", "mortgage", "treasury", "commodity", "volatility",
         "earnings", "forecast",  "capital", "interest", "balance", "invoice", "revenue",
         "solvency", "collateral", "recession", "stimulus", "tariff", "surplus"},
    };

    v.positive_words = {"great",     "awesome",  "wonderful", "fantastic", "lovely",
                        "brilliant", "amazing",  "delightful", "superb",   "excellent",
                        "happy",     "joyful",   "cheerful",  "thrilled",  "grateful",
                        "beautiful", "perfect",  "sunny",     "splendid",  "charming",
                        "inspiring", "glorious", "radiant",   "festive",   "refreshing"};
    v.negative_words = {"terrible", "awful",    "horrible",  "dreadful", "miserable",
                        "gloomy",   "annoying", "disappointing", "ugly", "painful",
                        "sad",      "angry",    "frustrated", "boring",  "bleak",
                        "broken",   "messy",    "tired",      "stressful", "grim",
                        "rotten",   "dismal",   "sour",       "lousy",    "dull"};

    v.organizations = {"acme corporation", "globex",          "initech",
                       "umbrella group",   "stark industries", "wayne enterprises",
                       "tyrell labs",      "cyberdyne systems", "aperture science",
                       "wonka factory",    "duff brewing",     "oceanic airlines",
                       "soylent foods",    "vandelay imports", "hooli"};
    return v;
}

}  // namespace

const SynthVocab& builtin_vocab() {
    static const SynthVocab vocab = make_builtin();
    return vocab;
}

}  // namespace osn
