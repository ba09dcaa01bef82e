public void doMonkeyBusiness() {
    allChaosTypes = Lists.newArrayList();
    allChaosTypes.add(new ShutdownInstanceChaosType(cfg));
}
