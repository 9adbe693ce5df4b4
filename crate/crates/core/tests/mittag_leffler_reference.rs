//! `E_{ρ,μ}(-x)` against values summed from the defining series at adaptive
//! working precision (mpmath, 22 digits shown).

use subdiff::special_functions::{ml_with_regime, MlParams};

const REFERENCE: &[(f64, f64, f64, f64)] = &[
    (0.1, 1.0, 0.3, 7.596125317784889446023e-1),
    (0.1, 1.0, 1.0, 4.855644643110821015915e-1),
    (0.1, 1.0, 1.4, 4.023655350451315945846e-1),
    (0.1, 1.1, 0.3, 8.012915607383702447861e-1),
    (0.1, 1.1, 1.0, 5.144355356889179197024e-1),
    (0.1, 1.1, 1.4, 4.268817606820489062214e-1),
    (0.25, 1.0, 0.3, 7.475917733762233885969e-1),
    (0.25, 1.0, 1.0, 4.638527608017132869365e-1),
    (0.25, 1.0, 1.4, 3.798161991982858339843e-1),
    (0.25, 1.0, 2.5, 2.52564634888944192064e-1),
    (0.25, 1.0, 5.0, 1.42798946425873695226e-1),
    (0.25, 1.25, 0.3, 8.413607554125887358136e-1),
    (0.25, 1.25, 1.0, 5.361472391982867130635e-1),
    (0.25, 1.25, 1.4, 4.429884291440815752578e-1),
    (0.25, 1.25, 2.5, 2.989741460444223231744e-1),
    (0.25, 1.25, 5.0, 1.714402107148252609548e-1),
    (0.25, 0.25, 0.3, 1.598182144035680681491e-1),
    (0.25, 0.25, 1.0, 6.382225757900272155242e-2),
    (0.25, 0.25, 1.4, 4.319051589584967261627e-2),
    (0.25, 0.25, 2.5, 1.93251531852092277222e-2),
    (0.25, 0.25, 5.0, 6.222919313790503301451e-3),
    (0.5, 0.5, 0.3, 3.438097831774597501278e-1),
    (0.5, 0.5, 1.0, 1.366060073919492825373e-1),
    (0.5, 0.5, 1.4, 8.994862659612780906812e-2),
    (0.5, 0.5, 2.5, 3.71736733948973353303e-2),
    (0.5, 0.5, 5.0, 1.066639488241315509702e-2),
    (0.5, 0.5, 9.0, 3.420067207784129629242e-3),
    (0.5, 0.5, 17.0, 9.710835524221630519423e-4),
    (0.5, 0.5, 30.0, 3.129177052537420343196e-4),
    (0.5, 0.5, 60.0, 7.832703717297162170294e-5),
    (0.5, 1.0, 0.3, 7.345993345676551499198e-1),
    (0.5, 1.0, 1.0, 4.275835761558070044108e-1),
    (0.5, 1.0, 1.4, 3.387435406797346485474e-1),
    (0.5, 1.0, 2.5, 2.108063640611435806471e-1),
    (0.5, 1.0, 5.0, 1.107046377330686263702e-1),
    (0.5, 1.0, 9.0, 6.230772403777468414654e-2),
    (0.5, 1.0, 17.0, 3.313049999972553669977e-2),
    (0.5, 1.0, 30.0, 1.879588886141675149713e-2),
    (0.5, 1.0, 60.0, 9.401854275176388588773e-3),
    (0.5, 1.5, 0.3, 8.8466888477448286634e-1),
    (0.5, 1.5, 1.0, 5.724164238441929955892e-1),
    (0.5, 1.5, 1.4, 4.723260423716181381454e-1),
    (0.5, 1.5, 2.5, 3.156774543755425677412e-1),
    (0.5, 1.5, 5.0, 1.77859072453386274726e-1),
    (0.5, 1.5, 9.0, 1.041880306624694795393e-1),
    (0.5, 1.5, 17.0, 5.687467647060438019413e-2),
    (0.5, 1.5, 30.0, 3.270680370461944161676e-2),
    (0.5, 1.5, 60.0, 1.650996909541372685685e-2),
    (0.7, 1.7, 0.3, 8.948644143311641652643e-1),
    (0.7, 1.7, 1.0, 6.00388021884400609731e-1),
    (0.7, 1.7, 1.4, 4.982964030028914097028e-1),
    (0.7, 1.7, 2.5, 3.325474853295216993894e-1),
    (0.7, 1.7, 5.0, 1.844861284470460380038e-1),
    (0.7, 1.7, 9.0, 1.066076447480721463082e-1),
    (0.7, 1.7, 17.0, 5.761123995632278812493e-2),
    (0.7, 1.7, 30.0, 3.295185828241576755354e-2),
    (0.7, 1.7, 60.0, 1.657256208055199297607e-2),
    (0.75, 0.75, 0.3, 5.451115453909694937249e-1),
    (0.75, 0.75, 1.0, 2.322377201009614319442e-1),
    (0.75, 0.75, 1.4, 1.506044521466465596931e-1),
    (0.75, 0.75, 2.5, 5.52220343077754731826e-2),
    (0.75, 0.75, 5.0, 1.214052097146821153474e-2),
    (0.75, 0.75, 9.0, 3.210626588195614754119e-3),
    (0.75, 0.75, 17.0, 8.085808441745642307651e-4),
    (0.75, 0.75, 30.0, 2.462207495826161593444e-4),
    (0.75, 0.75, 60.0, 5.946477530709063160744e-5),
    (0.75, 1.0, 0.3, 7.319081751102203856902e-1),
    (0.75, 1.0, 1.0, 3.931083028157540617696e-1),
    (0.75, 1.0, 1.4, 2.92906191432098738003e-1),
    (0.75, 1.0, 2.5, 1.564269586119474428939e-1),
    (0.75, 1.0, 5.0, 6.792397433264394212192e-2),
    (0.75, 1.0, 9.0, 3.445362795692950139615e-2),
    (0.75, 1.0, 17.0, 1.725159088254258692303e-2),
    (0.75, 1.0, 30.0, 9.516692693117128881577e-3),
    (0.75, 1.0, 60.0, 4.676466642150124257121e-3),
    (0.75, 1.75, 0.3, 8.93639416299265414104e-1),
    (0.75, 1.75, 1.0, 6.068916971842459382304e-1),
    (0.75, 1.75, 1.4, 5.050670061199295048971e-1),
    (0.75, 1.75, 2.5, 3.374292165552210228424e-1),
    (0.75, 1.75, 5.0, 1.864152051334712115756e-1),
    (0.75, 1.75, 9.0, 1.072829302270078331782e-1),
    (0.75, 1.75, 17.0, 5.7808729948085730181e-2),
    (0.75, 1.75, 30.0, 3.301611024356276237061e-2),
    (0.75, 1.75, 60.0, 1.658872555596416459571e-2),
    (0.9, 1.0, 0.3, 7.358452766484305874682e-1),
    (0.9, 1.0, 1.0, 3.760660214246418790238e-1),
    (0.9, 1.0, 1.4, 2.644384733549923927649e-1),
    (0.9, 1.0, 2.5, 1.146998675455778450442e-1),
    (0.9, 1.0, 5.0, 3.443132480409841832342e-2),
    (0.9, 1.0, 9.0, 1.464630799663719132915e-2),
    (0.9, 1.0, 17.0, 6.883897002567916145572e-3),
    (0.9, 1.0, 30.0, 3.713707698459852110954e-3),
    (0.9, 1.0, 60.0, 1.802234031284614575353e-3),
    (0.9, 1.9, 0.3, 8.805157445052314346145e-1),
    (0.9, 1.9, 1.0, 6.239339785753581285116e-1),
    (0.9, 1.9, 1.4, 5.254010904607197544178e-1),
    (0.9, 1.9, 2.5, 3.541200529817688563317e-1),
    (0.9, 1.9, 5.0, 1.931137350391803089487e-1),
    (0.9, 1.9, 9.0, 1.094837435559291954587e-1),
    (0.9, 1.9, 17.0, 5.841859429396658983583e-2),
    (0.9, 1.9, 30.0, 3.320954307671800293164e-2),
    (0.9, 1.9, 60.0, 1.66366294328119220565e-2),
    (0.9, 0.9, 0.3, 6.653230368340556102832e-1),
    (0.9, 0.9, 1.0, 3.081487977766219544718e-1),
    (0.9, 0.9, 1.4, 2.021951391091149224483e-1),
    (0.9, 0.9, 2.5, 6.887303024650165037244e-2),
    (0.9, 0.9, 5.0, 1.02127904529921332155e-2),
    (0.9, 0.9, 9.0, 1.882316735778573930577e-3),
    (0.9, 0.9, 17.0, 4.078279175165683865354e-4),
    (0.9, 0.9, 30.0, 1.182504479430720678894e-4),
    (0.9, 0.9, 60.0, 2.781905760817736393918e-5),
    (0.99, 1.0, 0.3, 7.402385014299585923757e-1),
    (0.99, 1.0, 1.0, 3.685483180603396169012e-1),
    (0.99, 1.0, 1.4, 2.482953025568869135171e-1),
    (0.99, 1.0, 2.5, 8.552279959611351797347e-2),
    (0.99, 1.0, 5.0, 9.768092139174128170771e-3),
    (0.99, 1.0, 9.0, 1.622634179990976914362e-3),
    (0.99, 1.0, 17.0, 6.760615655753696256512e-4),
    (0.99, 1.0, 30.0, 3.597560516821723975366e-4),
    (0.99, 1.0, 60.0, 1.734126143051653592988e-4),
    (0.99, 1.99, 0.3, 8.65871661900138057458e-1),
    (0.99, 1.99, 1.0, 6.314516819396603830988e-1),
    (0.99, 1.99, 1.4, 5.369319267450808101229e-1),
    (0.99, 1.99, 2.5, 3.657908801615545928106e-1),
    (0.99, 1.99, 5.0, 1.980463815721651743658e-1),
    (0.99, 1.99, 9.0, 1.109308184244454470095e-1),
    (0.99, 1.99, 17.0, 5.878376108437791943379e-2),
    (0.99, 1.99, 30.0, 3.332134146494392758675e-2),
    (0.99, 1.99, 60.0, 1.666377645642824724401e-2),
    (1.0, 1.0, 0.3, 7.408182206817178742916e-1),
    (1.0, 1.0, 1.0, 3.678794411714423215955e-1),
    (1.0, 1.0, 1.4, 2.465969639416064988421e-1),
    (1.0, 1.0, 2.5, 8.208499862389879516953e-2),
    (1.0, 1.0, 5.0, 6.737946999085467096636e-3),
    (1.0, 1.0, 9.0, 1.234098040866795494976e-4),
    (1.0, 1.0, 17.0, 4.139937718785166659651e-8),
    (1.0, 1.0, 30.0, 9.357622968840174604916e-14),
    (1.0, 1.0, 60.0, 8.756510762696520338489e-27),
    (1.0, 2.0, 0.3, 8.639392643942737843335e-1),
    (1.0, 2.0, 1.0, 6.321205588285576784045e-1),
    (1.0, 2.0, 1.4, 5.381450257559953921106e-1),
    (1.0, 2.0, 2.5, 3.671660005504404819322e-1),
    (1.0, 2.0, 5.0, 1.986524106001829065807e-1),
    (1.0, 2.0, 9.0, 1.110973989106570356056e-1),
    (1.0, 2.0, 17.0, 5.882352697650722424402e-2),
    (1.0, 2.0, 30.0, 3.333333333333021412568e-2),
    (1.0, 2.0, 60.0, 1.666666666666666666667e-2),
    (1.0, 0.5, 0.3, 2.85906619742222968631e-1),
    (1.0, 0.5, 1.0, -4.296812229363744216696e-2),
    (1.0, 0.5, 1.4, -1.178575886369619439447e-1),
    (1.0, 0.5, 2.5, -1.587971963692198994542e-1),
    (1.0, 0.5, 5.0, -8.860647588682764991105e-2),
    (1.0, 0.5, 9.0, -3.928236756504487303589e-2),
    (1.0, 0.5, 17.0, -1.833610137229810362896e-2),
    (1.0, 0.5, 30.0, -9.917916820618687816913e-3),
    (1.0, 0.5, 60.0, -4.824326159202731742205e-3),
    (1.0, 2.5, 0.3, 6.692309591457827309136e-1),
    (1.0, 2.5, 1.0, 5.212214612541188447811e-1),
    (1.0, 2.5, 1.4, 4.580018682392854011439e-1),
    (1.0, 2.5, 2.5, 3.356737820514888397341e-1),
    (1.0, 2.5, 5.0, 1.995639910417191573049e-1),
    (1.0, 2.5, 9.0, 1.179251920092199012973e-1),
    (1.0, 2.5, 17.0, 6.435958531385349261473e-2),
    (1.0, 2.5, 30.0, 3.697474168055222471347e-2),
    (1.0, 2.5, 60.0, 1.864826003222883205974e-2),
    (0.3, 2.2, 0.3, 7.255606821021374542404e-1),
    (0.3, 2.2, 1.0, 4.914160971545066245407e-1),
    (0.3, 2.2, 1.4, 4.142588015869910343129e-1),
    (0.3, 2.2, 2.5, 2.888167496040088448469e-1),
    (0.3, 2.2, 5.0, 1.707170981655332274923e-1),
    (0.3, 2.2, 9.0, 1.030995234832733706829e-1),
    (0.6, 0.3, 0.3, 1.337517221268693174691e-1),
    (0.6, 0.3, 1.0, -2.554598158241120296952e-2),
    (0.6, 0.3, 1.4, -4.876105232936656699277e-2),
    (0.6, 0.3, 2.5, -5.662665796357562028952e-2),
    (0.6, 0.3, 5.0, -3.913495560650860903258e-2),
    (0.6, 0.3, 9.0, -2.391978974793809758984e-2),
    (0.6, 0.3, 17.0, -1.317978196285924443339e-2),
    (0.6, 0.3, 30.0, -7.582826542509926412972e-3),
    (0.6, 0.3, 60.0, -3.823663252428219320311e-3),
    (0.5, 3.0, 0.3, 4.227049017318692351186e-1),
    (0.5, 3.0, 1.0, 3.08215521314994627571e-1),
    (0.5, 3.0, 1.4, 2.662057469856769581174e-1),
    (0.5, 3.0, 2.5, 1.929140208395481000996e-1),
    (0.5, 3.0, 5.0, 1.180547163698720202462e-1),
    (0.5, 3.0, 9.0, 7.264288910780620313409e-2),
    (0.5, 3.0, 17.0, 4.100805156747954354387e-2),
    (0.5, 3.0, 30.0, 2.400456194891475694333e-2),
    (0.5, 3.0, 60.0, 1.226491606586680683425e-2),
];

#[test]
fn matches_high_precision_series() {
    let mut worst = (0.0, (0.0, 0.0, 0.0));
    for &(rho, mu, x, want) in REFERENCE {
        let (got, regime) = ml_with_regime(MlParams::new(rho, mu).unwrap(), -x).unwrap();
        let err = ((got - want) / want).abs();
        if err > worst.0 {
            worst = (err, (rho, mu, x));
        }
        assert!(err <= 1e-12, "E_{{{rho},{mu}}}(-{x}) = {got} via {regime}, want {want} (rel {err:e})");
    }
    eprintln!("worst relative error {:e} at {:?}", worst.0, worst.1);
}
