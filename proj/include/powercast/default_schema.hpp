#pragma once

#include "powercast/schema.hpp"

namespace powercast {

// Bundled city-indicator schema: 10 core factors and 75 common factors, with
// the annual electric power consumption as target. The public source table
// for the common factors omits a few indicators that were dropped for strong
// linear correlation with listed ones; the four "Unlisted common factor N"
// entries hold those slots so the feature count stays at 85. Replace them via
// a custom schema file when real columns are available.
inline FeatureSchema default_schema() {
    using C = FeatureCategory;
    std::vector<FeatureDescriptor> f = {
        // Core influencing factors.
        {"Gross regional domestic product (GDP)", "10000CNY", C::core},
        {"Total population", "10000", C::core},
        {"Highway passenger volume", "10000", C::core},
        {"Highway freight volume", "10000 ton", C::core},
        {"Number of domestic enterprises", "1", C::core},
        {"Number of employees on the job", "10000", C::core},
        {"Total telecom business", "10000CNY", C::core},
        {"number of mobile phone users", "10000", C::core},
        {"area of land", "Square kilometers", C::core},
        {"Number of industrial enterprises above designated size", "1", C::core},
        // Common influencing factors.
        {"Births", "1", C::common},
        {"Deaths", "1", C::common},
        {"Natural Growth Rate of Population", "Permillage", C::common},
        {"Number of employees in transportation, storage, post and telecommunications industry",
         "10000", C::common},
        {"Number of employees in accommodation and catering industry", "10000", C::common},
        {"Number of employees in information transmission, computer service and software industry",
         "10000", C::common},
        {"Number of employees in public management and social organizations", "10000", C::common},
        {"Number of employees in agriculture, forestry, animal husbandry and fishery", "10000",
         C::common},
        {"Number of employees in manufacturing industry", "10000", C::common},
        {"Number of employees in health, social insurance and social welfare", "10000", C::common},
        {"Number of employees in resident service and other service industries", "10000",
         C::common},
        {"Value added of the secondary industry", "10000CNY", C::common},
        {"Number of employees in construction industry", "10000", C::common},
        {"Number of employees in the real estate industry", "10000", C::common},
        {"Number of employees in wholesale and retail trade", "10000", C::common},
        {"Number of employees in the education industry", "10000", C::common},
        {"Number of employees in culture, sports and entertainment", "10000", C::common},
        {"Number of employees in water conservancy, environment and public facilities management",
         "10000", C::common},
        {"Number of employees in electricity, gas and water production and supply industry",
         "10000", C::common},
        {"Number of employees in scientific research, technical services and geological "
         "exploration",
         "10000", C::common},
        {"Number of employees in leasing and commercial service industry", "10000", C::common},
        {"Number of employees in the financial industry", "10000", C::common},
        {"Number of employees in the primary industry", "10000", C::common},
        {"Proportion of employees in the primary industry", "percentage", C::common},
        {"Number of employees in the secondary industry", "10000", C::common},
        {"Proportion of employees in the secondary industry", "percentage", C::common},
        {"Number of employees in the tertiary industry", "10000", C::common},
        {"Proportion of employees in the tertiary industry", "percentage", C::common},
        {"Number of patent authorizations", "1", C::common},
        {"Number of patent applications", "1", C::common},
        {"Number of students in secondary vocational and technical schools", "1", C::common},
        {"Number of full-time teachers in secondary vocational education schools", "1", C::common},
        {"Number of secondary vocational education schools", "1", C::common},
        {"Total collection of books in Public Libraries", "1000", C::common},
        {"Value added of the primary industry", "10000CNY", C::common},
        {"Total profit", "10000CNY", C::common},
        {"Number of doctors", "1", C::common},
        {"Number of beds in hospitals and health centers", "1", C::common},
        {"Number of hospitals and health centers", "1", C::common},
        {"Number of Museums", "1", C::common},
        {"Number of invention patents authorized", "1", C::common},
        {"Total wages of on-the-job employees", "10000CNY", C::common},
        {"Average number of on-the-job employees", "10000", C::common},
        {"General budgetary expenditure of local finance", "10000CNY", C::common},
        {"General budgetary revenue of local finance", "10000CNY", C::common},
        {"Number of urban employees participating in basic old-age insurance", "1", C::common},
        {"Number of Foreign-invested Enterprises", "1", C::common},
        {"Number of people participating in unemployment insurance", "1", C::common},
        {"Number of full-time teachers in primary schools", "1", C::common},
        {"Number of primary schools", "1", C::common},
        {"Number of primary school students", "10000", C::common},
        {"Total number of households at the end of the year", "10000", C::common},
        {"Balance of deposits of financial institutions at the end of the year", "10000CNY",
         C::common},
        {"Education expenditure", "10000CNY", C::common},
        {"Number of full-time teachers in ordinary middle schools", "1", C::common},
        {"Number of students in ordinary middle schools", "10000", C::common},
        {"Number of ordinary secondary schools", "1", C::common},
        {"Number of ordinary colleges and Universities", "1", C::common},
        {"Total water resources", "10000 cubic meters", C::common},
        {"Total retail sales of consumer goods", "10000CNY", C::common},
        {"Scientific expenditure", "10000CNY", C::common},
        {"Average salary of employees", "1CNY", C::common},
        {"Export volume of goods", "10000CNY", C::common},
        {"Import volume of goods", "10000CNY", C::common},
        {"Total postal services", "10000CNY", C::common},
        {"Total sales of wholesale and retail trade above Designated Size", "10000CNY", C::common},
        {"Year end balance of urban and rural residents' savings", "10000CNY", C::common},
        {"Balance of various loans of financial institutions at the end of the year", "10000CNY",
         C::common},
        {"Per capita gross regional product", "1CNY", C::common},
        {"Growth rate of gross regional product", "percentage", C::common},
        {"Value added of the tertiary industry", "10000CNY", C::common},
        // Placeholder slots, see note above.
        {"Unlisted common factor 1", "1", C::common},
        {"Unlisted common factor 2", "1", C::common},
        {"Unlisted common factor 3", "1", C::common},
        {"Unlisted common factor 4", "1", C::common},
    };
    return FeatureSchema(std::move(f), "Electric power consumption", "10000 kWh");
}

}  // namespace powercast
