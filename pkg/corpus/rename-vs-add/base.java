public void doMonkeyBusiness() {
    enabledChaosTypes = Lists.newArrayList();
    enabledChaosTypes.add(new ShutdownInstanceChaosType(cfg));
}
