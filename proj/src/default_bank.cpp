#include "mfrls/simulator.hpp"

namespace mfrls {
namespace {

// generate_bank({2, 2}, kDefaultBankSeed) as produced with libstdc++; kept as
// literals so the default study does not depend on the standard library's
// distribution algorithms.
const PolynomialBank& embedded_bank_2_2() {
    static const PolynomialBank bank{
        {
            {1.0, -1.5412920376612695, 0.59390405102252553},
            {1.0, 1.1327683131855932, 0.55946475241430904},
            {1.0, -0.33480059623596176, 0.3592646889110146},
            {1.0, -1.5153463028416481, 0.60095710894705012},
            {1.0, -0.22364112548984499, 0.22287639420302574},
            {1.0, -0.55476614849750783, 0.10452283372807875},
            {1.0, 0.27582621025681375, 0.49581766648577691},
            {1.0, 0.7822785739710203, 0.30345508695876727},
            {1.0, -0.78073928081834465, 0.37257244213463026},
        },
        {
            {0.81381060519955972, 0.46700742201684758},
            {0.80985564712851232, 0.42806014542076909},
        },
    };
    return bank;
}

}  // namespace

PolynomialBank default_bank(const ModelOrders& orders) {
    if (orders == ModelOrders{2, 2}) return embedded_bank_2_2();
    return generate_bank(orders, kDefaultBankSeed);
}

}  // namespace mfrls
